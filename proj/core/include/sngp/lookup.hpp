#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace sngp {

/// Cached cosine map c -> c' for one sparsity level. Immutable once built;
/// safe to share across threads. Interpolation is monotone cubic, so stored
/// monotonicity and the [0, 1] range of c_out survive evaluation.
class LookupTable {
public:
    LookupTable(double f, double sigma, std::vector<double> c_grid, std::vector<double> c_out);

    double f() const { return f_; }
    double sigma() const { return sigma_; }
    std::span<const double> grid() const { return c_grid_; }
    std::span<const double> values() const { return c_out_; }
    std::size_t size() const { return c_grid_.size(); }

    /// Interpolated map. Inputs within 1e-12 of [-1, 1] are clamped; beyond
    /// that it throws std::domain_error.
    double map_cosine(double c) const;

    /// Stored image of c = 1 (the fixed-point value; exactly the last node).
    double value_at_one() const { return c_out_.back(); }

    /// Little-endian cache file: "SNGP", version, f, sigma, grid length,
    /// then c_grid and c_out as consecutive f64 arrays.
    void save(const std::filesystem::path& path) const;
    static LookupTable load(const std::filesystem::path& path);

private:
    double f_ = 0.0;
    double sigma_ = 0.0;
    std::vector<double> c_grid_, c_out_, slope_;
};

/// Build a table for sparsity f on a grid clustered toward both endpoints
/// (where the map's curvature in c blows up). sigma defaults to sigma*(tau).
/// The built table is probed against direct cosine_map evaluation on a dense
/// grid; if the max abs interpolation error exceeds 1e-6 this throws with the
/// measured error.
LookupTable build_lookup(double f, int grid_size = 2049,
                         std::optional<double> sigma = std::nullopt);

}  // namespace sngp
