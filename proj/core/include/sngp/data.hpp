#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace sngp {

struct Dataset {
    Eigen::MatrixXd x;           // M x n inputs
    Eigen::MatrixXd y;           // M x k targets (may be empty)
    std::vector<int> labels;     // optional class labels
    std::vector<int> train_idx;  // disjoint from test_idx
    std::vector<int> test_idx;
};

/// M unit-norm points evenly spaced on the circle: (cos 2 pi p / M, sin 2 pi p / M).
Dataset circulant_dataset(int m_total);

/// Alternating +1/-1 blocks of length m_total / n_blocks; exact zero mean.
/// n_blocks must be even and divide m_total.
Eigen::VectorXd square_wave_target(int m_total, int n_blocks);

/// IDX binary pair (big-endian magic 0x803 images / 0x801 labels). Pixels are
/// scaled to [0, 1]; labels are kept and one-hot encoded with k = 10.
Dataset load_idx(const std::filesystem::path& images_path,
                 const std::filesystem::path& labels_path);

/// CSV rows of "label, feature..."; optional single header line.
Dataset load_csv(const std::filesystem::path& path, bool header = false);

/// Deterministic seeded train/test split over all M rows; train size p_train,
/// the rest is test. p_train equal to the pool size leaves the test set empty.
Dataset subsample(const Dataset& ds, int p_train, std::uint64_t seed);

/// Planar RGB rows (R plane, G plane, B plane) to luminance rows with weights
/// 0.299 / 0.587 / 0.114.
Eigen::MatrixXd to_grayscale(const Eigen::MatrixXd& rgb_rows, int width, int height);

/// One-hot rows for integer labels in [0, k).
Eigen::MatrixXd one_hot(const std::vector<int>& labels, int k);

/// Scale every row to unit norm in place; zero rows throw.
void normalize_rows(Eigen::MatrixXd& x);

}  // namespace sngp
