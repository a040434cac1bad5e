#include "fiem/app/output.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fiem/io.hpp"

namespace fiem::app {

namespace fs = std::filesystem;

void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, path);
}

void write_coefficients_csv(const DensitySolution& solution, std::ostream& out) {
    out << "index,block,re,im\n" << std::setprecision(17);
    for (std::size_t i = 0; i < solution.mesh.size(); ++i) {
        const auto c = solution.coeffs(static_cast<Eigen::Index>(i));
        out << solution.mesh[i].index.to_string() << ',' << solution.mesh[i].block << ',' << c.real() << ',' << c.imag()
            << '\n';
    }
}

std::string mesh_csv(const Mesh& mesh) {
    std::ostringstream s;
    write_mesh_csv(mesh, s);
    return s.str();
}

double matrix_bytes(std::size_t n) { return static_cast<double>(n) * static_cast<double>(n) * 16.0; }

bool warn_memory(std::size_t n, double budget_gib, std::ostream& log) {
    const double gib = matrix_bytes(n) / (1024.0 * 1024.0 * 1024.0);
    if (gib <= budget_gib) return false;
    log << "warning: N = " << n << " needs " << std::setprecision(3) << gib << " GiB for the Galerkin matrix (budget "
        << budget_gib << " GiB)\n";
    return true;
}

fs::path fundamental_cache_file(const fs::path& dir, const IFSAttractor& ifs, double t, double h_q) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "_t%.17g_hq%.17g.json", t, h_q);
    return dir / (attractor_hash(ifs) + buf);
}

FundamentalSource cached_fundamentals(const fs::path& dir) {
    return [dir](const IFSAttractor& part, double t, double h_q) {
        const auto file = fundamental_cache_file(dir, part, t, h_q);
        if (fs::exists(file)) {
            std::ifstream in(file);
            std::stringstream text;
            text << in.rdbuf();
            try {
                auto set = FundamentalSet::from_json(text.str(), part);
                if (set.t() == t && set.h_q() == h_q) return set;
            } catch (const std::exception&) {
                // unreadable entries are recomputed and overwritten
            }
        }
        auto set = similarity_reduce(part, t, h_q);
        write_atomic(file, set.to_json());
        return set;
    };
}

}  // namespace fiem::app
