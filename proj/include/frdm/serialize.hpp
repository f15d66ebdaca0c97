#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "frdm/basis.hpp"
#include "frdm/certificates.hpp"
#include "frdm/extremal.hpp"
#include "frdm/states.hpp"

namespace frdm {

/// 17 significant digits: round-trip exact for IEEE doubles.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace detail {

inline void append_json_string(std::string& s, const std::string& text) {
  s += '"';
  for (char c : text) {
    switch (c) {
      case '"': s += "\\\""; break;
      case '\\': s += "\\\\"; break;
      case '\n': s += "\\n"; break;
      case '\t': s += "\\t"; break;
      default: s += c;
    }
  }
  s += '"';
}

inline void append_complex(std::string& s, const std::complex<double>& z) {
  s += '[';
  s += format_double(z.real());
  s += ',';
  s += format_double(z.imag());
  s += ']';
}

}  // namespace detail

// ---------------------------------------------------------------------------
// SectorVector <-> JSON
// ---------------------------------------------------------------------------

inline std::string to_json(const SectorVector& v) {
  std::string s = "{\"M\":" + std::to_string(v.modes) + ",\"N\":" + std::to_string(v.particles) +
                  ",\"basis_order\":\"mask-ascending\",\"amps\":[";
  for (Eigen::Index i = 0; i < v.amps.size(); ++i) {
    if (i) s += ',';
    detail::append_complex(s, v.amps[i]);
  }
  s += "]}";
  return s;
}

inline SectorVector sector_vector_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("M") || !j.contains("N") || !j.contains("amps"))
    throw std::invalid_argument("sector_vector_from_json: missing M/N/amps");
  if (j.value("basis_order", std::string{}) != "mask-ascending")
    throw std::invalid_argument("sector_vector_from_json: basis_order must be mask-ascending");
  const int modes = j.at("M").get<int>();
  const int particles = j.at("N").get<int>();
  SectorVector v = sector_zero(modes, particles);
  const auto& amps = j.at("amps");
  if (!amps.is_array() || static_cast<Eigen::Index>(amps.size()) != v.amps.size())
    throw std::invalid_argument("sector_vector_from_json: amps length != C(M,N)");
  for (Eigen::Index i = 0; i < v.amps.size(); ++i) {
    const auto& p = amps[static_cast<std::size_t>(i)];
    if (!p.is_array() || p.size() != 2)
      throw std::invalid_argument("sector_vector_from_json: amplitude must be [re, im]");
    v.amps[i] = std::complex<double>(p[0].get<double>(), p[1].get<double>());
    if (!std::isfinite(v.amps[i].real()) || !std::isfinite(v.amps[i].imag()))
      throw std::invalid_argument("sector_vector_from_json: non-finite amplitude");
  }
  return v;
}

inline SectorVector sector_vector_from_json(const std::string& text) {
  return sector_vector_from_json(nlohmann::json::parse(text));
}

// ---------------------------------------------------------------------------
// complex matrix <-> JSON (row-major entry list)
// ---------------------------------------------------------------------------

inline std::string to_json(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("to_json: matrix not square");
  std::string s = "{\"dim\":" + std::to_string(m.rows()) + ",\"entries\":[";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i || j) s += ',';
      detail::append_complex(s, m(i, j));
    }
  s += "]}";
  return s;
}

inline Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j) {
  const Eigen::Index dim = j.at("dim").get<Eigen::Index>();
  const auto& entries = j.at("entries");
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != dim * dim)
    throw std::invalid_argument("matrix_from_json: entries length != dim^2");
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index jj = 0; jj < dim; ++jj) {
      const auto& p = entries[static_cast<std::size_t>(i * dim + jj)];
      m(i, jj) = std::complex<double>(p[0].get<double>(), p[1].get<double>());
    }
  return m;
}

inline Eigen::MatrixXcd matrix_from_json(const std::string& text) {
  return matrix_from_json(nlohmann::json::parse(text));
}

// ---------------------------------------------------------------------------
// certificate reports and extremal results
// ---------------------------------------------------------------------------

/// One report as a single JSON line (no trailing newline).
inline std::string to_json_line(const CertificateReport& r) {
  std::string s = "{\"name\":";
  detail::append_json_string(s, r.name);
  s += ",\"lhs\":" + format_double(r.lhs);
  s += ",\"rhs\":" + format_double(r.rhs);
  s += ",\"margin\":" + format_double(r.margin);
  s += r.pass ? ",\"pass\":true" : ",\"pass\":false";
  s += ",\"context\":{";
  bool first = true;
  for (const auto& [key, value] : r.context) {
    if (!first) s += ',';
    first = false;
    detail::append_json_string(s, key);
    s += ':';
    s += format_double(value);
  }
  s += "}}";
  return s;
}

inline std::string to_json(const ExtremalResult& res, const OptimizerConfig& cfg) {
  std::string s = "{\"M\":" + std::to_string(res.best_state.modes) +
                  ",\"N\":" + std::to_string(res.best_state.particles);
  s += ",\"config\":{\"max_iters\":" + std::to_string(cfg.max_iters);
  s += ",\"step_size\":" + format_double(cfg.step_size);
  s += ",\"tol_grad\":" + format_double(cfg.tol_grad);
  s += ",\"restarts\":" + std::to_string(cfg.restarts);
  s += ",\"seed\":" + std::to_string(cfg.seed) + "}";
  s += ",\"best_value\":" + format_double(res.best_value);
  s += ",\"bound\":" + format_double(std::sqrt(5.0) * res.best_state.particles);
  s += res.converged ? ",\"converged\":true" : ",\"converged\":false";
  s += res.bound_violated ? ",\"bound_violated\":true" : ",\"bound_violated\":false";
  s += ",\"trajectory\":[";
  for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
    if (i) s += ',';
    s += '[' + std::to_string(res.trajectory[i].first) + ',' +
         format_double(res.trajectory[i].second) + ']';
  }
  s += "],\"best_state\":" + to_json(res.best_state) + "}";
  return s;
}

}  // namespace frdm
