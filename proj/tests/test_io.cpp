#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "credal/io.hpp"

using namespace credal;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = std::string("io_test_") + std::to_string(counter++) + ".txt";
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("reads whitespace and comma delimited matrices") {
    const TempFile f("1 2.5 -3\n4,5,6\n# a comment line\n\n7\t8\t9e-1\n");
    const Matrix m = read_matrix_file(f.path);
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 3);
    CHECK(m(0, 1) == doctest::Approx(2.5));
    CHECK(m(1, 2) == doctest::Approx(6.0));
    CHECK(m(2, 2) == doctest::Approx(0.9));
}

TEST_CASE("parse errors name the file and line") {
    const TempFile f("1 2\n3 oops\n");
    try {
        read_matrix_file(f.path);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find(f.path + ":2") != std::string::npos);
        CHECK(msg.find("oops") != std::string::npos);
    }
}

TEST_CASE("ragged rows and empty files are rejected") {
    const TempFile ragged("1 2\n3 4 5\n");
    CHECK_THROWS_AS(read_matrix_file(ragged.path), ParseError);
    const TempFile empty("# nothing\n");
    CHECK_THROWS_AS(read_matrix_file(empty.path), ParseError);
    CHECK_THROWS_AS(read_matrix_file("does_not_exist.txt"), ParseError);
    const TempFile inf_file("1 inf\n2 3\n");
    CHECK_THROWS_AS(read_matrix_file(inf_file.path), ParseError);
}

TEST_CASE("group column splits rows into extreme points") {
    const TempFile f("1 0.1 0.2\n"
                     "2 1.1 1.2\n"
                     "1 0.3 0.4\n"
                     "3 2.1 2.2\n"
                     "2 1.3 1.4\n"
                     "1 0.5 0.6\n");
    const GroupedSample g = read_grouped_file(f.path, 0);
    REQUIRE(g.sample.count() == 3);
    CHECK(g.group_labels == std::vector<long long>{1, 2, 3});
    CHECK(g.group_sizes == std::vector<std::size_t>{3, 2, 1});
    CHECK(g.sample.dim() == 2);
    CHECK(g.sample.extreme(0).values()(1, 0) == doctest::Approx(0.3));
    CHECK(g.sample.extreme(2).values()(0, 1) == doctest::Approx(2.2));
}

TEST_CASE("group column validation") {
    const TempFile f("1.5 2 3\n1 4 5\n");
    CHECK_THROWS_AS(read_grouped_file(f.path, 0), ParseError);  // non-integer label
    const TempFile g("1 2\n1 3\n");
    CHECK_THROWS_AS(read_grouped_file(g.path, 5), ParseError);  // column out of range
    const TempFile h("1\n2\n");
    CHECK_THROWS_AS(read_grouped_file(h.path, 0), ParseError);  // nothing left after split
}

TEST_CASE("matrix files round-trip") {
    Matrix m(2, 3);
    double v = 0.25;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            m(i, j) = (v *= -1.7);
    const TempFile f("");
    write_matrix_file(f.path, m);
    const Matrix back = read_matrix_file(f.path);
    CHECK(back == m);
}

TEST_CASE("read_credal_files keeps file order") {
    const TempFile a("1 2\n3 4\n");
    const TempFile b("5 6\n");
    const CredalSample s = read_credal_files({a.path, b.path});
    REQUIRE(s.count() == 2);
    CHECK(s.extreme(0).size() == 2);
    CHECK(s.extreme(1).size() == 1);
    CHECK(s.extreme(1).values()(0, 1) == doctest::Approx(6.0));
}

}  // TEST_SUITE
