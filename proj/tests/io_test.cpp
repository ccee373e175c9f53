#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "gramfield/matrix_io.hpp"

using namespace gramfield;

namespace {

void expect_identical(const FieldMatrix& a, const FieldMatrix& b) {
    EXPECT_EQ(a.rows(), b.rows());
    EXPECT_EQ(a.cols(), b.cols());
    EXPECT_EQ(a.row_origin(), b.row_origin());
    EXPECT_EQ(a.col_origin(), b.col_origin());
    EXPECT_EQ(a.kind(), b.kind());
    EXPECT_EQ(a.seed(), b.seed());
    EXPECT_TRUE(a.entries() == b.entries());
}

FieldMatrix random_matrix(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dim(1, 7), origin(-3, 3);
    std::uniform_int_distribution<int> pick(0, 2);
    const long r = dim(rng), c = dim(rng);
    Matrix m = Matrix::Zero(r, c);
    std::normal_distribution<double> g;
    const FieldKind kinds[] = {FieldKind::noise_U, FieldKind::raw_Z, FieldKind::generic};
    const FieldKind kind = kinds[pick(rng)];
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) m(i, j) = {g(rng) * 1e5, g(rng) * 1e-7};
    return FieldMatrix(std::move(m), kind, rng(), origin(rng), origin(rng));
}

}  // namespace

TEST(MatrixCsv, RoundTripIsExact) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_matrix(rng);
        std::stringstream buf;
        write_matrix_csv(buf, m);
        expect_identical(m, read_matrix_csv(buf));
    }
}

TEST(MatrixCsv, Layout) {
    Matrix e(1, 2);
    e << cplx{1.0, -0.5}, cplx{0.1, 0.0};
    std::stringstream buf;
    write_matrix_csv(buf, FieldMatrix(e, FieldKind::generic, 9, -1, 2));
    EXPECT_EQ(buf.str(),
              "# gramfield-matrix rows=1 cols=2 row_origin=-1 col_origin=2 kind=generic seed=9\n"
              "row,col,re,im\n"
              "0,0,1,-0.5\n"
              "0,1,0.10000000000000001,0\n");
}

TEST(MatrixCsv, RejectsMalformedInput) {
    const std::string meta = "# gramfield-matrix rows=1 cols=2 row_origin=0 col_origin=0 kind=generic seed=0\n";
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_matrix_csv(in);
    };
    EXPECT_NO_THROW(parse(meta + "row,col,re,im\n0,0,1,0\n0,1,2,0\n"));
    EXPECT_THROW(parse("row,col,re,im\n0,0,1,0\n"), std::runtime_error);
    EXPECT_THROW(parse(meta + "0,0,1,0\n0,1,2,0\n"), std::runtime_error);
    EXPECT_THROW(parse(meta + "row,col,re,im\n0,0,1,0\n"), std::runtime_error);
    EXPECT_THROW(parse(meta + "row,col,re,im\n0,0,1,0\n0,0,2,0\n"), std::runtime_error);
    EXPECT_THROW(parse(meta + "row,col,re,im\n0,0,1,0\n0,2,2,0\n"), std::runtime_error);
    EXPECT_THROW(parse(meta + "row,col,re,im\n0,0,1,0\n0,1,x,0\n"), std::runtime_error);
    EXPECT_THROW(parse(meta + "row,col,re,im\n0,0,1,0\n0,1,2\n"), std::runtime_error);
    EXPECT_THROW(parse("# gramfield-matrix rows=1 cols=1 kind=bogus\nrow,col,re,im\n0,0,1,0\n"),
                 std::invalid_argument);
    EXPECT_THROW(parse("# gramfield-matrix rows=one cols=1 kind=generic\nrow,col,re,im\n0,0,1,0\n"),
                 std::runtime_error);
}

TEST(MatrixBinary, RoundTripIsExact) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_matrix(rng);
        std::stringstream buf;
        write_matrix_binary(buf, m);
        EXPECT_EQ(buf.str().size(), 4 + 4 + 4 * 8 + 4 + 8 + std::size_t(m.rows() * m.cols()) * 16);
        expect_identical(m, read_matrix_binary(buf));
    }
}

TEST(MatrixBinary, RejectsMalformedInput) {
    std::stringstream buf;
    write_matrix_binary(buf, FieldMatrix(Matrix::Identity(2, 2), FieldKind::generic));
    const std::string good = buf.str();
    const auto parse = [](const std::string& bytes) {
        std::istringstream in(bytes);
        return read_matrix_binary(in);
    };
    EXPECT_NO_THROW(parse(good));
    EXPECT_THROW(parse(good.substr(0, good.size() - 1)), std::runtime_error);
    std::string bad_magic = good;
    bad_magic[0] = 'X';
    EXPECT_THROW(parse(bad_magic), std::runtime_error);
    std::string bad_version = good;
    bad_version[4] = 2;
    EXPECT_THROW(parse(bad_version), std::runtime_error);
    std::string bad_kind = good;
    bad_kind[4 + 4 + 32] = 99;
    EXPECT_THROW(parse(bad_kind), std::runtime_error);
}

TEST(MatrixFiles, ExtensionSelectsFormat) {
    const auto dir = std::filesystem::temp_directory_path() / "gramfield_io_test";
    std::filesystem::create_directories(dir);
    std::mt19937_64 rng(5);
    const auto m = random_matrix(rng);
    for (const char* name : {"m.csv", "m.bin"}) {
        const auto path = (dir / name).string();
        save_matrix(path, m);
        expect_identical(m, load_matrix(path));
    }
    std::ifstream bin(dir / "m.bin", std::ios::binary);
    char magic[4];
    bin.read(magic, 4);
    EXPECT_EQ(std::string(magic, 4), "GFMX");
    EXPECT_THROW(load_matrix((dir / "missing.csv").string()), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST(MatrixFiles, StructuredKindsAreRecheckedOnLoad) {
    std::stringstream buf;
    Matrix e = Matrix::Identity(2, 2);
    write_matrix_csv(buf, FieldMatrix(e, FieldKind::pseudo_diagonal_Lambda));
    std::string text = buf.str();
    text.replace(text.find("0,1,0,0"), 7, "0,1,1,0");
    std::istringstream in(text);
    EXPECT_THROW(read_matrix_csv(in), std::invalid_argument);
}
