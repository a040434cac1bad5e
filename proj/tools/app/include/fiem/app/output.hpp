#pragma once

// Artifact writing: atomic files, CSV tables, metadata and the
// fundamental-set cache.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "fiem/galerkin.hpp"

namespace fiem::app {

/// Writes `content` to `<path>.tmp` and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Header `index,block,re,im`, one row per basis function.
void write_coefficients_csv(const DensitySolution& solution, std::ostream& out);

std::string mesh_csv(const Mesh& mesh);

/// Bytes of an N x N complex double matrix.
double matrix_bytes(std::size_t n);

/// Prints a warning when the Galerkin matrix exceeds the budget; returns
/// whether it did.
bool warn_memory(std::size_t n, double budget_gib, std::ostream& log);

/// Fundamental sets stored as `<dir>/<attractor hash>_t<t>_hq<h_q>.json`.
/// A file is used only when its stored t and h_Q match exactly.
FundamentalSource cached_fundamentals(const std::filesystem::path& dir);

std::filesystem::path fundamental_cache_file(const std::filesystem::path& dir, const IFSAttractor& ifs, double t,
                                             double h_q);

}  // namespace fiem::app
