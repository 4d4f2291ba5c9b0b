#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "pnorm/constructions.hpp"
#include "pnorm/error.hpp"
#include "pnorm/source.hpp"

using namespace pnorm;

namespace {

bool same(const PAryFunction& a, const PAryFunction& b) {
    return a.p() == b.p() && a.n() == b.n() && std::ranges::equal(a.table(), b.table());
}

std::string error_of(std::string_view text) {
    try {
        parse_function_spec(text);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(Source, Kinds) {
    const auto z = parse_function_spec("zero p=3 n=2");
    EXPECT_EQ(z.size(), 9u);
    EXPECT_TRUE(std::ranges::all_of(z.table(), [](Digit d) { return d == 0; }));

    const auto c = parse_function_spec("const p=5 n=1 c=4");
    EXPECT_TRUE(std::ranges::all_of(c.table(), [](Digit d) { return d == 4; }));

    const auto a = parse_function_spec("affine p=3 n=2 v=4 c=1");
    for (Point x = 0; x < 9; ++x) EXPECT_EQ(a(x), (x % 3 + x / 3 + 1) % 3);

    EXPECT_TRUE(same(parse_function_spec("p=3 n=6 term=7:98"), build_fixture("example-V")));
    EXPECT_TRUE(same(parse_function_spec("trace p=3 n=6 term=7:14 term=35:70"), build_fixture("example-VI")));
    EXPECT_TRUE(same(parse_function_spec("cm n=6 k=7 coeff=3"), build_fixture("example-I")));
    EXPECT_TRUE(same(parse_function_spec("product p=3 n=4 alpha=73 beta=76"), build_fixture("example-VII")));
}

TEST(Source, ErrorsNameTheToken) {
    EXPECT_NE(error_of("zero p=3 n=2 bogus").find("\"bogus\""), std::string::npos);
    EXPECT_NE(error_of("zero p=x n=2").find("\"p=x\""), std::string::npos);
    EXPECT_NE(error_of("trace p=3 n=4 term=1-2").find("\"term=1-2\""), std::string::npos);
    EXPECT_NE(error_of("zero p=3 n=2 q=1").find("\"q=1\""), std::string::npos);
    EXPECT_NE(error_of("zero n=2").find("p="), std::string::npos);
    EXPECT_FALSE(error_of("const p=4 n=1 c=0").empty());
    EXPECT_FALSE(error_of("trace p=3 n=4").empty());
}

TEST(Source, Resolve) {
    EXPECT_TRUE(same(resolve_source("fixture:example-V"), build_fixture("example-V")));
    EXPECT_TRUE(same(resolve_source("example-V"), build_fixture("example-V")));
    EXPECT_TRUE(same(resolve_source("spec:zero p=3 n=2"), parse_function_spec("zero p=3 n=2")));

    const auto path = std::filesystem::temp_directory_path() / "pnorm_source_test.tbl";
    to_table_file(build_fixture("quad-regular-3-4"), path);
    EXPECT_TRUE(same(resolve_source("file:" + path.string()), build_fixture("quad-regular-3-4")));
    std::filesystem::remove(path);

    EXPECT_THROW(resolve_source("fixture:nope"), Error);
    EXPECT_THROW(resolve_source("file:/nonexistent/x.tbl"), Error);
}
