#include "sngp/lookup.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sngp/kernel.hpp"
#include "sngp/numerics.hpp"
#include "sngp/parallel.hpp"

namespace sngp {

namespace {
constexpr char kMagic[4] = {'S', 'N', 'G', 'P'};
constexpr std::uint32_t kFormatVersion = 1;
constexpr double kProbeBound = 1e-6;

void check_monotone(const std::vector<double>& c_grid, const std::vector<double>& c_out) {
    for (std::size_t i = 0; i + 1 < c_grid.size(); ++i) {
        if (!(c_grid[i + 1] > c_grid[i]))
            throw std::invalid_argument("LookupTable: c_grid must be strictly increasing");
        if (c_out[i + 1] < c_out[i])
            throw std::invalid_argument("LookupTable: c_out must be non-decreasing");
    }
}
}  // namespace

LookupTable::LookupTable(double f, double sigma, std::vector<double> c_grid,
                         std::vector<double> c_out)
    : f_(f), sigma_(sigma), c_grid_(std::move(c_grid)), c_out_(std::move(c_out)) {
    if (c_grid_.size() != c_out_.size() || c_grid_.size() < 4)
        throw std::invalid_argument("LookupTable: grid arrays must match and hold >= 4 nodes");
    check_monotone(c_grid_, c_out_);
    slope_ = pchip_slopes(c_grid_, c_out_);
}

double LookupTable::map_cosine(double c) const {
    if (c > 1.0 + 1e-12 || c < -1.0 - 1e-12)
        throw std::domain_error("LookupTable::map_cosine: cosine outside [-1, 1]");
    return pchip_eval(c_grid_, c_out_, slope_, c);
}

void LookupTable::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("LookupTable::save: cannot open " + path.string());
    out.write(kMagic, 4);
    const std::uint32_t version = kFormatVersion;
    const std::uint32_t n = static_cast<std::uint32_t>(c_grid_.size());
    out.write(reinterpret_cast<const char*>(&version), sizeof version);
    out.write(reinterpret_cast<const char*>(&f_), sizeof f_);
    out.write(reinterpret_cast<const char*>(&sigma_), sizeof sigma_);
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(c_grid_.data()), n * sizeof(double));
    out.write(reinterpret_cast<const char*>(c_out_.data()), n * sizeof(double));
    if (!out) throw std::runtime_error("LookupTable::save: write failed for " + path.string());
}

LookupTable LookupTable::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("LookupTable::load: cannot open " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("LookupTable::load: bad magic in " + path.string());
    std::uint32_t version = 0, n = 0;
    double f = 0.0, sigma = 0.0;
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    if (!in || version != kFormatVersion) {
        std::ostringstream msg;
        msg << "LookupTable::load: unsupported format version " << version;
        throw std::runtime_error(msg.str());
    }
    in.read(reinterpret_cast<char*>(&f), sizeof f);
    in.read(reinterpret_cast<char*>(&sigma), sizeof sigma);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    if (!in || n < 4 || n > (1u << 24))
        throw std::runtime_error("LookupTable::load: implausible grid length");
    std::vector<double> grid(n), out_vals(n);
    in.read(reinterpret_cast<char*>(grid.data()), n * sizeof(double));
    in.read(reinterpret_cast<char*>(out_vals.data()), n * sizeof(double));
    if (!in) throw std::runtime_error("LookupTable::load: truncated file " + path.string());
    return LookupTable(f, sigma, std::move(grid), std::move(out_vals));
}

LookupTable build_lookup(double f, int grid_size, std::optional<double> sigma) {
    if (grid_size < 65) throw std::invalid_argument("build_lookup: grid_size must be >= 65");
    const double tau = tau_from_f(f);
    const double sig = sigma ? *sigma : sigma_star(tau);
    if (!(sig > 0.0)) throw std::invalid_argument("build_lookup: sigma must be > 0");

    // Quadratically clustered toward both endpoints, where d^2 c'/dc^2 grows
    // like 1/sqrt(1 - c^2): s in [-1, 1] uniform, c = s (2 - |s|).
    std::vector<double> grid(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        const double s = -1.0 + 2.0 * static_cast<double>(i) / (grid_size - 1);
        grid[i] = s * (2.0 - std::abs(s));
    }
    grid.front() = -1.0;
    grid.back() = 1.0;

    std::vector<double> out_vals(grid_size);
    parallel_for(static_cast<std::size_t>(grid_size),
                 [&](std::size_t i) { out_vals[i] = cosine_map(grid[i], tau, sig); });

    // The map is monotone, but where its slope vanishes (near c = -1) the
    // node-to-node differences drop below quadrature jitter; flatten those.
    for (int i = 1; i < grid_size; ++i) {
        if (out_vals[i] < out_vals[i - 1]) {
            if (out_vals[i - 1] - out_vals[i] > 1e-9)
                throw std::runtime_error("build_lookup: map values decreased beyond jitter");
            out_vals[i] = out_vals[i - 1];
        }
    }

    LookupTable table(f, sig, std::move(grid), std::move(out_vals));

    // Probe against direct evaluation; reject grids that interpolate worse
    // than the contract allows.
    const int n_probe = 8 * grid_size + 1;
    std::vector<double> err(n_probe);
    parallel_for(static_cast<std::size_t>(n_probe), [&](std::size_t i) {
        const double c = -1.0 + 2.0 * static_cast<double>(i) / (n_probe - 1);
        err[i] = std::abs(table.map_cosine(c) - cosine_map(c, tau, sig));
    });
    double max_err = 0.0;
    for (double e : err) max_err = std::max(max_err, e);
    if (max_err > kProbeBound) {
        std::ostringstream msg;
        msg << "build_lookup: grid of " << grid_size << " nodes interpolates with max error "
            << max_err << " > " << kProbeBound << "; increase grid_size";
        throw std::runtime_error(msg.str());
    }
    return table;
}

}  // namespace sngp
