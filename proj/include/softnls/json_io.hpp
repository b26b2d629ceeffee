#pragma once
//
// JSON forms of soft reals, soft sets, soft vectors, operators, sequence
// specs, and of the result types. Readers throw StructuralError on any
// malformed or ill-typed input.
//

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "softnls/error.hpp"
#include "softnls/operator.hpp"
#include "softnls/opnorm.hpp"
#include "softnls/report.hpp"
#include "softnls/sequences.hpp"
#include "softnls/soft_core.hpp"
#include "softnls/soft_vector.hpp"

namespace softnls::io {

using Json = nlohmann::json;

namespace detail {

// Runs `fn`, turning JSON access errors into StructuralError.
template <class Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& ex) {
    throw StructuralError(std::string(what) + ": " + ex.what());
  }
}

inline void require_object(const Json& j, const char* what) {
  softnls::detail::require(j.is_object(), std::string(what) + ": expected a JSON object");
}

inline double number(const Json& j, const char* what) {
  softnls::detail::require(j.is_number(), std::string(what) + ": expected a number");
  return j.get<double>();
}

inline std::vector<double> numbers(const Json& j, const char* what) {
  softnls::detail::require(j.is_array(), std::string(what) + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

inline std::vector<std::string> strings(const Json& j, const char* what) {
  softnls::detail::require(j.is_array(), std::string(what) + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    softnls::detail::require(v.is_string(), std::string(what) + ": expected strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// soft reals and soft sets
// ---------------------------------------------------------------------------

inline Json to_json(const SoftReal& r) {
  Json values = Json::object();
  for (std::size_t i = 0; i < r.params().size(); ++i) values[r.params()[i]] = r[i];
  return {{"params", r.params().labels()}, {"values", values}};
}

inline SoftReal soft_real_from_json(const Json& j) {
  return detail::guarded("soft real", [&] {
    detail::require_object(j, "soft real");
    ParameterSet params(detail::strings(j.at("params"), "soft real params"));
    const auto& vals = j.at("values");
    detail::require_object(vals, "soft real values");
    softnls::detail::require(vals.size() == params.size(), "soft real: values must cover exactly the params");
    std::vector<double> out;
    for (const auto& label : params.labels()) out.push_back(detail::number(vals.at(label), "soft real value"));
    return SoftReal(std::move(params), std::move(out));
  });
}

inline Json to_json(const SoftSet& s) {
  Json assignment = Json::object();
  for (std::size_t i = 0; i < s.params().size(); ++i) {
    assignment[s.params()[i]] = std::vector<std::string>(s.assignment()[i].begin(), s.assignment()[i].end());
  }
  return {{"params", s.params().labels()},
          {"universe", std::vector<std::string>(s.universe().begin(), s.universe().end())},
          {"assignment", assignment}};
}

inline SoftSet soft_set_from_json(const Json& j) {
  return detail::guarded("soft set", [&] {
    detail::require_object(j, "soft set");
    ParameterSet params(detail::strings(j.at("params"), "soft set params"));
    const auto elems = detail::strings(j.at("universe"), "soft set universe");
    SoftSet::Subset universe(elems.begin(), elems.end());
    softnls::detail::require(universe.size() == elems.size(), "soft set: duplicate universe element");
    const auto& asg = j.at("assignment");
    detail::require_object(asg, "soft set assignment");
    for (const auto& [label, _] : asg.items()) {
      softnls::detail::require(params.contains(label), "soft set: assignment for unknown parameter '" + label + "'");
    }
    std::vector<SoftSet::Subset> assignment(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (!asg.contains(params[i])) continue;
      const auto xs = detail::strings(asg.at(params[i]), "soft set assignment");
      assignment[i] = SoftSet::Subset(xs.begin(), xs.end());
    }
    return SoftSet(std::move(params), std::move(universe), std::move(assignment));
  });
}

// ---------------------------------------------------------------------------
// soft vectors, operators, sequences
// ---------------------------------------------------------------------------

inline Json to_json(const SoftVector& v) {
  return {{"x", std::vector<double>(v.x().begin(), v.x().end())}, {"e", v.e()}};
}

inline SoftVector soft_vector_from_json(const Json& j) {
  return detail::guarded("soft vector", [&] {
    detail::require_object(j, "soft vector");
    return SoftVector(detail::numbers(j.at("x"), "soft vector x"), detail::number(j.at("e"), "soft vector e"));
  });
}

inline std::vector<SoftVector> soft_vectors_from_json(const Json& j) {
  softnls::detail::require(j.is_array(), "expected a JSON array of soft vectors");
  std::vector<SoftVector> out;
  for (const auto& v : j) out.push_back(soft_vector_from_json(v));
  return out;
}

inline Json to_json(const SoftLinearOperator& t) {
  Json a = Json::array();
  const Eigen::MatrixXd am = t.a();
  for (Eigen::Index i = 0; i < am.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < am.cols(); ++k) row.push_back(am(i, k));
    a.push_back(row);
  }
  const Eigen::VectorXd b = t.b();
  const Eigen::VectorXd c = t.c();
  return {{"A", a},
          {"b", std::vector<double>(b.data(), b.data() + b.size())},
          {"c", std::vector<double>(c.data(), c.data() + c.size())},
          {"lam", t.lam()}};
}

inline SoftLinearOperator operator_from_json(const Json& j) {
  return detail::guarded("operator", [&] {
    detail::require_object(j, "operator");
    const auto& rows = j.at("A");
    softnls::detail::require(rows.is_array() && !rows.empty(), "operator A: expected a non-empty array of rows");
    const auto first = detail::numbers(rows.at(0), "operator A row");
    const auto m = static_cast<Eigen::Index>(rows.size());
    const auto n = static_cast<Eigen::Index>(first.size());
    Eigen::MatrixXd a(m, n);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto row = detail::numbers(rows.at(static_cast<std::size_t>(i)), "operator A row");
      softnls::detail::require(static_cast<Eigen::Index>(row.size()) == n, "operator A: ragged rows");
      for (Eigen::Index k = 0; k < n; ++k) a(i, k) = row[static_cast<std::size_t>(k)];
    }
    const auto b = detail::numbers(j.at("b"), "operator b");
    const auto c = detail::numbers(j.at("c"), "operator c");
    return SoftLinearOperator(a, Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size())),
                              Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())),
                              detail::number(j.at("lam"), "operator lam"));
  });
}

/// A single operator object or an array of them.
inline std::vector<SoftLinearOperator> operators_from_json(const Json& j) {
  if (j.is_object()) return {operator_from_json(j)};
  softnls::detail::require(j.is_array() && !j.empty(), "expected an operator object or a non-empty array of them");
  std::vector<SoftLinearOperator> out;
  for (const auto& o : j) out.push_back(operator_from_json(o));
  return out;
}

inline Json to_json(const SequenceSpec& s) {
  Json j = {{"kind", s.kind}, {"base", to_json(s.base)}, {"rho", s.rho}};
  if (s.direction) j["direction"] = to_json(*s.direction);
  return j;
}

inline SequenceSpec sequence_spec_from_json(const Json& j) {
  return detail::guarded("sequence spec", [&] {
    detail::require_object(j, "sequence spec");
    softnls::detail::require(j.at("kind").is_string(), "sequence spec kind: expected a string");
    SequenceSpec spec{j.at("kind").get<std::string>(), soft_vector_from_json(j.at("base")), std::nullopt, 0.5};
    if (j.contains("direction")) spec.direction = soft_vector_from_json(j.at("direction"));
    if (j.contains("rho")) spec.rho = detail::number(j.at("rho"), "sequence spec rho");
    make_sequence(spec);  // validates kind and parameters
    return spec;
  });
}

// ---------------------------------------------------------------------------
// results
// ---------------------------------------------------------------------------

inline Json to_json(const Counterexample& c) {
  Json vs = Json::array();
  for (const auto& v : c.vectors) vs.push_back(to_json(v));
  Json j = {{"check", c.check}, {"index", c.index}, {"excess", c.excess}, {"vectors", vs}};
  if (c.scalar) j["scalar"] = *c.scalar;
  return j;
}

inline Json to_json(const VerificationReport& r) {
  Json ces = Json::array();
  for (const auto& c : r.counterexamples) ces.push_back(to_json(c));
  return {{"suite", r.suite},         {"samples", r.samples},     {"violations", r.violations},
          {"max_violation", r.max_violation}, {"tolerance", r.tolerance}, {"seed", r.seed},
          {"counterexamples", ces}};
}

/// Structural check of the report schema; returns an empty string when valid.
inline std::string validate_report_json(const Json& j) {
  if (!j.is_object()) return "report is not an object";
  const char* keys[] = {"suite", "samples", "violations", "max_violation", "tolerance", "seed", "counterexamples"};
  for (const char* k : keys) {
    if (!j.contains(k)) return std::string("missing field ") + k;
  }
  if (j.size() != std::size(keys)) return "unexpected extra fields";
  if (!j["suite"].is_string()) return "suite must be a string";
  for (const char* k : {"samples", "violations", "seed"}) {
    if (!j[k].is_number_unsigned()) return std::string(k) + " must be a nonnegative integer";
  }
  for (const char* k : {"max_violation", "tolerance"}) {
    if (!j[k].is_number()) return std::string(k) + " must be a number";
  }
  if (!j["counterexamples"].is_array()) return "counterexamples must be an array";
  if (j["counterexamples"].size() > VerificationReport::kMaxCounterexamples) return "too many counterexamples";
  const bool none = j["violations"].get<std::uint64_t>() == 0;
  if (none != j["counterexamples"].empty()) return "counterexamples must be non-empty iff violations > 0";
  if (none != (j["max_violation"].get<double>() <= j["tolerance"].get<double>())) {
    return "violations == 0 must coincide with max_violation <= tolerance";
  }
  return {};
}

inline Json to_json(const OpNormResult& r) {
  return {{"value", r.value},
          {"maximizer", to_json(r.maximizer)},
          {"method", to_string(r.method)},
          {"iterations", r.iterations},
          {"certificate_gap", r.certificate_gap ? Json(*r.certificate_gap) : Json(nullptr)}};
}

inline Json to_json(const HorizonVerdict& v, const char* reached_name) {
  Json j = {{"verdict", v.reached() ? reached_name : "NOT_WITHIN_HORIZON"}, {"horizon", v.horizon}};
  j["index"] = v.reached() ? Json(*v.index) : Json(nullptr);
  return j;
}

inline Json to_json(const IndependenceReport& r) {
  return {{"verdict", r.independent ? "independent" : "dependent"},
          {"rank", r.rank},
          {"singular_values", r.singular_values},
          {"vector_parts_independent", r.vector_parts_independent},
          {"parameters_vanish_on_vector_kernel", r.parameters_vanish_on_vector_kernel}};
}

}  // namespace softnls::io
