#include "sngp/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sngp {

namespace {

std::uint32_t read_be32(std::istream& in, const char* what) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error(std::string("load_idx: truncated ") + what);
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) | (std::uint32_t(b[2]) << 8) |
           std::uint32_t(b[3]);
}

}  // namespace

Dataset circulant_dataset(int m_total) {
    if (m_total < 4) throw std::invalid_argument("circulant_dataset: m_total must be >= 4");
    Dataset ds;
    ds.x.resize(m_total, 2);
    for (int p = 0; p < m_total; ++p) {
        const double ang = 2.0 * std::numbers::pi * p / m_total;
        ds.x(p, 0) = std::cos(ang);
        ds.x(p, 1) = std::sin(ang);
    }
    return ds;
}

Eigen::VectorXd square_wave_target(int m_total, int n_blocks) {
    if (n_blocks < 2 || n_blocks % 2 != 0)
        throw std::invalid_argument("square_wave_target: n_blocks must be even and >= 2");
    if (m_total % n_blocks != 0)
        throw std::invalid_argument("square_wave_target: n_blocks must divide m_total");
    const int block = m_total / n_blocks;
    Eigen::VectorXd y(m_total);
    for (int b = 0; b < n_blocks; ++b)
        y.segment(b * block, block).setConstant(b % 2 == 0 ? 1.0 : -1.0);
    return y;
}

Dataset load_idx(const std::filesystem::path& images_path,
                 const std::filesystem::path& labels_path) {
    std::ifstream img(images_path, std::ios::binary);
    if (!img) throw std::runtime_error("load_idx: cannot open " + images_path.string());
    const std::uint32_t img_magic = read_be32(img, "image magic");
    if (img_magic != 0x00000803) {
        std::ostringstream msg;
        msg << "load_idx: bad image magic 0x" << std::hex << img_magic;
        throw std::runtime_error(msg.str());
    }
    const std::uint32_t n = read_be32(img, "image count");
    const std::uint32_t rows = read_be32(img, "row count");
    const std::uint32_t cols = read_be32(img, "column count");
    const std::size_t dim = std::size_t(rows) * cols;
    std::vector<unsigned char> pix(std::size_t(n) * dim);
    img.read(reinterpret_cast<char*>(pix.data()), static_cast<std::streamsize>(pix.size()));
    if (!img) throw std::runtime_error("load_idx: truncated image data");

    std::ifstream lbl(labels_path, std::ios::binary);
    if (!lbl) throw std::runtime_error("load_idx: cannot open " + labels_path.string());
    const std::uint32_t lbl_magic = read_be32(lbl, "label magic");
    if (lbl_magic != 0x00000801) {
        std::ostringstream msg;
        msg << "load_idx: bad label magic 0x" << std::hex << lbl_magic;
        throw std::runtime_error(msg.str());
    }
    const std::uint32_t n_lbl = read_be32(lbl, "label count");
    if (n_lbl != n) {
        std::ostringstream msg;
        msg << "load_idx: image/label count mismatch (" << n << " vs " << n_lbl << ")";
        throw std::runtime_error(msg.str());
    }
    std::vector<unsigned char> raw(n);
    lbl.read(reinterpret_cast<char*>(raw.data()), n);
    if (!lbl) throw std::runtime_error("load_idx: truncated label data");

    Dataset ds;
    ds.x.resize(n, static_cast<Eigen::Index>(dim));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            ds.x(i, static_cast<Eigen::Index>(j)) = pix[i * dim + j] / 255.0;
    ds.labels.assign(raw.begin(), raw.end());
    ds.y = one_hot(ds.labels, 10);
    return ds;
}

Dataset load_csv(const std::filesystem::path& path, bool header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path.string());
    std::string line;
    if (header && !std::getline(in, line))
        throw std::runtime_error("load_csv: empty file " + path.string());
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() < 2) throw std::runtime_error("load_csv: row with fewer than 2 columns");
        labels.push_back(static_cast<int>(std::lround(vals[0])));
        rows.emplace_back(vals.begin() + 1, vals.end());
    }
    if (rows.empty()) throw std::runtime_error("load_csv: no data rows in " + path.string());
    const std::size_t dim = rows.front().size();
    Dataset ds;
    ds.x.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != dim) throw std::runtime_error("load_csv: ragged rows");
        for (std::size_t j = 0; j < dim; ++j)
            ds.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    if (!ds.x.allFinite()) throw std::runtime_error("load_csv: non-finite feature value");
    ds.labels = std::move(labels);
    const int k = 1 + *std::max_element(ds.labels.begin(), ds.labels.end());
    ds.y = one_hot(ds.labels, std::max(k, 2));
    return ds;
}

Dataset subsample(const Dataset& ds, int p_train, std::uint64_t seed) {
    const int m = static_cast<int>(ds.x.rows());
    if (p_train < 1 || p_train > m)
        throw std::invalid_argument("subsample: p_train outside [1, pool size]");
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    // Fisher-Yates over raw engine output; unlike std::shuffle, the split is
    // then identical across standard libraries for a given seed
    std::mt19937_64 rng(seed);
    auto bounded = [&rng](std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = rng();
        } while (x >= limit);
        return static_cast<int>(x % n);
    };
    for (int i = m - 1; i > 0; --i) std::swap(perm[i], perm[bounded(i + 1)]);
    Dataset out = ds;
    out.train_idx.assign(perm.begin(), perm.begin() + p_train);
    out.test_idx.assign(perm.begin() + p_train, perm.end());
    std::sort(out.train_idx.begin(), out.train_idx.end());
    std::sort(out.test_idx.begin(), out.test_idx.end());
    if (out.test_idx.empty())
        std::cerr << "subsample: p_train consumed the whole pool, test set is empty\n";
    return out;
}

Eigen::MatrixXd to_grayscale(const Eigen::MatrixXd& rgb_rows, int width, int height) {
    const Eigen::Index n_pix = static_cast<Eigen::Index>(width) * height;
    if (rgb_rows.cols() != 3 * n_pix)
        throw std::invalid_argument("to_grayscale: row length must be 3 * width * height");
    Eigen::MatrixXd gray(rgb_rows.rows(), n_pix);
    for (Eigen::Index i = 0; i < rgb_rows.rows(); ++i)
        for (Eigen::Index p = 0; p < n_pix; ++p)
            gray(i, p) = 0.299 * rgb_rows(i, p) + 0.587 * rgb_rows(i, n_pix + p) +
                         0.114 * rgb_rows(i, 2 * n_pix + p);
    return gray;
}

Eigen::MatrixXd one_hot(const std::vector<int>& labels, int k) {
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), k);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= k)
            throw std::invalid_argument("one_hot: label outside [0, k)");
        y(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
    }
    return y;
}

void normalize_rows(Eigen::MatrixXd& x) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double n = x.row(i).norm();
        if (!(n > 0.0)) throw std::domain_error("normalize_rows: zero-norm row");
        x.row(i) /= n;
    }
}

}  // namespace sngp
