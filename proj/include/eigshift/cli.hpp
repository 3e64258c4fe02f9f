#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eigshift/biorthogonality.hpp"
#include "eigshift/eigenstructure.hpp"
#include "eigshift/generators.hpp"
#include "eigshift/io.hpp"
#include "eigshift/oracle.hpp"

namespace eigshift::cli {

using io::Json;

enum class Verdict { pass, fail, not_applicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "unknown";
}

inline Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

enum ExitCode : int { exit_ok = 0, exit_parse = 2, exit_precondition = 3, exit_discrepancy = 4 };

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return exit_parse;
    case ErrorKind::extraction:
    case ErrorKind::classification_bug:
    case ErrorKind::internal: return exit_discrepancy;
    default: return exit_precondition;
  }
}

/// A command's report and the exit status it implies. `report` is null when
/// the command stopped before it had anything to report.
struct Outcome {
  Json report;
  int exit_code = exit_ok;
};

namespace detail {

// Collects verdicts so the exit status can be derived from them.
struct Verdicts {
  bool any_fail = false;
  Json put(Json& report, const char* key, Verdict v) {
    any_fail = any_fail || v == Verdict::fail;
    report[key] = to_string(v);
    return report[key];
  }
};

inline Json cycles_to_json(const Scalar& lambda, const std::vector<Cycle>& cycles) {
  Json out = Json::array();
  for (const auto& c : cycles) {
    Json vs = Json::array();
    for (const auto& v : c) vs.push_back(io::vector_to_json(v));
    out.push_back(Json{{"eigenvalue", io::scalar_to_json(lambda)}, {"length", c.size()}, {"vectors", vs}});
  }
  return out;
}

inline SegreCharacteristic joined(SegreCharacteristic local, const SegreCharacteristic& rest) {
  local.append(rest);
  return local.canonical();
}

inline std::vector<Scalar> distinct_eigenvalues(const SegreCharacteristic& s) {
  std::vector<Scalar> out;
  for (const auto& b : s.blocks()) {
    bool seen = false;
    for (const auto& x : out) seen = seen || x == b.eigenvalue;
    if (!seen) out.push_back(b.eigenvalue);
  }
  return out;
}

// Everything the pipeline needs once the job's source has been resolved.
struct Resolved {
  Matrix a;
  ChainPair chain;
  std::optional<Matrix> basis;  // with the chain at columns [offset, offset + m)
  std::size_t offset = 0;
  std::optional<SegreCharacteristic> untouched;  // known when the spectrum is
  std::vector<Scalar> other_eigenvalues;
};

inline Resolved resolve(const io::ShiftJob& job) {
  Resolved r;
  if (job.synthesized) {
    const auto& src = *job.synthesized;
    const std::size_t n = src.segre.total_size();
    const Matrix p = src.change_of_basis ? *src.change_of_basis : Matrix::identity(n);
    const SynthesizedMatrix syn = build_matrix(src.segre, p);
    std::optional<std::size_t> idx;
    for (std::size_t b = 0; b < src.segre.blocks().size(); ++b) {
      if (!(src.segre.blocks()[b].eigenvalue == job.target_eigenvalue)) continue;
      if (idx) throw Error(ErrorKind::precondition, "target eigenvalue carries more than one Jordan block");
      idx = b;
    }
    if (!idx) throw Error(ErrorKind::precondition, "target eigenvalue is not in the prescribed structure");
    r.a = syn.a;
    r.chain = syn.chains[*idx];
    r.offset = syn.offsets[*idx];
    if (src.left_hankel) {
      if (src.left_hankel->size() != r.chain.left.size())
        throw Error(ErrorKind::dimension_mismatch, "left_hankel needs one parameter per chain vector");
      r.chain.left = left_chain_from_hankel(syn.basis_inv, r.offset, *src.left_hankel);
    }
    r.basis = syn.basis;
    r.untouched = src.segre.without(job.target_eigenvalue);
    r.other_eigenvalues = distinct_eigenvalues(*r.untouched);
  } else {
    const auto& src = *job.explicit_source;
    r.a = src.matrix;
    r.chain = src.chain;
    if (!r.a.is_square()) throw Error(ErrorKind::dimension_mismatch, "matrix must be square, got " + r.a.shape());
    if (!(r.chain.lambda == job.target_eigenvalue))
      throw Error(ErrorKind::precondition, "chain eigenvalue differs from target_eigenvalue");
    if (src.eigenvalues) {
      for (const auto& x : *src.eigenvalues) {
        bool seen = x == job.target_eigenvalue;
        for (const auto& y : r.other_eigenvalues) seen = seen || x == y;
        if (!seen) r.other_eigenvalues.push_back(x);
      }
      std::vector<Scalar> all{job.target_eigenvalue};
      all.insert(all.end(), r.other_eigenvalues.begin(), r.other_eigenvalues.end());
      r.untouched = oracle_segre(r.a, all).without(job.target_eigenvalue);
    }
  }
  if (r.chain.right.size() / 2 != job.k)
    throw Error(ErrorKind::precondition, "k = " + std::to_string(job.k) + " but the chain has length " +
                                             std::to_string(r.chain.right.size()));
  return r;
}

inline std::optional<FloatMatrix> to_float(const std::optional<Matrix>& m) {
  if (!m) return std::nullopt;
  return eigshift::to_float(*m);
}

inline BasicChainPair<FloatScalar> to_float(const ChainPair& c) {
  BasicChainPair<FloatScalar> out{c.lambda.to_complex(), {}, {}};
  for (const auto& u : c.left) out.left.push_back(eigshift::to_float(u));
  for (const auto& v : c.right) out.right.push_back(eigshift::to_float(v));
  return out;
}

inline Outcome shift_float(const io::ShiftJob& job, const Resolved& r, Json report) {
  Verdicts verdicts;
  const auto s = shift_chain(eigshift::to_float(r.a), to_float(r.chain), job.new_eigenvalue.to_complex(),
                             to_float(job.r_free), to_float(job.l_free));
  report["shifted_matrix"] = io::matrix_to_json_any(s.a_hat);
  for (const char* key : {"predicted_segre", "case_label", "closed_form_segre", "cycle_source", "oracle_segre"})
    report[key] = nullptr;
  verdicts.put(report, "spectrum_check", Verdict::not_applicable);
  verdicts.put(report, "half_chain_invariance", verdict_of(half_chain_invariance(s)));
  verdicts.put(report, "classification_check", Verdict::not_applicable);
  verdicts.put(report, "closed_form_check", Verdict::not_applicable);
  verdicts.put(report, "cycle_check", Verdict::not_applicable);
  report["cycles"] = Json::array();
  report["discrepancy_diagnostics"] =
      Json::array({"float backend: structure prediction and spectrum checks need exact arithmetic"});
  return Outcome{std::move(report), verdicts.any_fail ? exit_discrepancy : exit_ok};
}

}  // namespace detail

/// shift -> predict -> verify for one job.
inline Outcome cmd_shift(const Json& job_json, std::optional<io::Backend> backend = std::nullopt) {
  io::ShiftJob job = io::job_from_json(job_json);
  if (backend) job.backend = *backend;
  const detail::Resolved r = detail::resolve(job);

  Json report = Json::object();
  report["job"] = io::job_to_json(job);
  if (job.backend == io::Backend::floating) return detail::shift_float(job, r, std::move(report));

  const ShiftResult s = shift_chain(r.a, r.chain, job.new_eigenvalue, job.r_free, job.l_free);
  detail::Verdicts verdicts;
  Json diagnostics = Json::array();
  report["shifted_matrix"] = io::matrix_to_json(s.a_hat);
  for (const char* key : {"predicted_segre", "case_label", "closed_form_segre", "cycle_source", "oracle_segre"})
    report[key] = nullptr;

  const Scalar& l1 = job.new_eigenvalue;
  std::optional<SegreCharacteristic> oracle;
  try {
    if (r.untouched) {
      std::vector<Scalar> after{l1};
      after.insert(after.end(), r.other_eigenvalues.begin(), r.other_eigenvalues.end());
      oracle = oracle_segre(s.a_hat, after);
    } else {
      oracle = eigshift::detail::sizes_segre(l1, weyr_profile(s.a_hat, l1).block_sizes());
    }
    report["oracle_segre"] = io::segre_to_json(*oracle);
  } catch (const Error& e) {
    diagnostics.push_back(std::string("oracle: ") + e.what());
  }

  std::optional<ShiftPrediction> pred;
  std::vector<Cycle> lifted;
  const bool collides = lambda1_collides(s);
  if (collides) {
    diagnostics.push_back("new eigenvalue coincides with an eigenvalue of the untouched part; no prediction");
  } else {
    try {
      pred = predict_structure(s, r.untouched.value_or(SegreCharacteristic{}), r.basis, r.offset);
      const auto& local = pred->local;
      const SegreCharacteristic rest = r.untouched.value_or(SegreCharacteristic{});
      report["predicted_segre"] = io::segre_to_json(pred->segre);
      report["case_label"] = to_string(local.case_label);
      report["closed_form_segre"] = io::segre_to_json(detail::joined(local.closed_form_segre, rest));
      report["cycle_source"] = to_string(local.source);
      for (const auto& d : local.diagnostics) diagnostics.push_back(d);
      lifted = pred->cycles;
    } catch (const Error& e) {
      if (exit_code_for(e.kind()) != exit_discrepancy) throw;
      diagnostics.push_back(std::string("prediction: ") + e.what());
      verdicts.any_fail = true;
    }
  }

  verdicts.put(report, "spectrum_check",
               verdict_of(spectrum_multiset_check(s.a, s.a_hat, s.plan.lambda0, l1, s.plan.multiplicity())));
  verdicts.put(report, "half_chain_invariance", verdict_of(half_chain_invariance(s)));
  if (pred && oracle) {
    const bool agree = pred->segre == *oracle;
    if (!agree)
      diagnostics.push_back("predicted " + pred->segre.to_string() + " but the rank oracle gives " + oracle->to_string());
    verdicts.put(report, "classification_check", verdict_of(agree));
    verdicts.put(report, "closed_form_check", verdict_of(pred->local.closed_form_agrees()));
  } else {
    verdicts.put(report, "classification_check", collides ? Verdict::not_applicable : Verdict::fail);
    verdicts.put(report, "closed_form_check", Verdict::not_applicable);
  }
  if (pred) {
    const CycleCheck cc = verify_cycles(s.a_hat, l1, lifted);
    if (!cc.detail.empty()) diagnostics.push_back("cycles: " + cc.detail);
    verdicts.put(report, "cycle_check", verdict_of(cc.recurrences && cc.independent));
  } else {
    verdicts.put(report, "cycle_check", Verdict::not_applicable);
  }
  report["cycles"] = detail::cycles_to_json(l1, lifted);
  report["discrepancy_diagnostics"] = diagnostics;
  return Outcome{std::move(report), verdicts.any_fail ? exit_discrepancy : exit_ok};
}

namespace detail {

inline Json prediction_to_json(const StructurePrediction& p, Verdicts& verdicts, Json& report) {
  report["case_label"] = to_string(p.case_label);
  report["segre"] = io::segre_to_json(p.segre);
  report["closed_form_segre"] = io::segre_to_json(p.closed_form_segre);
  report["cycle_source"] = to_string(p.source);
  const CycleCheck cc = verify_cycles(p.canonical, p.lambda, p.cycles);
  verdicts.put(report, "cycle_check", verdict_of(cc.ok(p.canonical.rows())));
  verdicts.put(report, "closed_form_check", verdict_of(p.closed_form_agrees()));
  report["cycles"] = cycles_to_json(p.lambda, p.cycles);
  Json diagnostics = Json::array();
  for (const auto& d : p.diagnostics) diagnostics.push_back(d);
  if (!cc.detail.empty()) diagnostics.push_back("cycles: " + cc.detail);
  return diagnostics;
}

inline Json vectors_to_json(const std::vector<Vector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(io::vector_to_json(v));
  return out;
}

}  // namespace detail

/// Case analysis of a canonical block given directly: {"kind": "even", "k",
/// "c"} or {"kind": "odd", "k", "a", "b", "c"}, with an optional "lambda".
inline Outcome cmd_classify(const Json& form, io::Backend backend = io::Backend::exact) {
  if (backend != io::Backend::exact)
    throw Error(ErrorKind::unsupported_backend, "classify needs the exact backend");
  const std::string kind = io::field(form, "kind").is_string() ? form.at("kind").get<std::string>() : "";
  const std::size_t k = io::count_from_json(io::field(form, "k"), "k");
  const Scalar lambda = form.contains("lambda") ? io::scalar_from_json(form.at("lambda")) : Scalar(0);
  const Matrix c = io::matrix_from_json(io::field(form, "c"));
  if (c.rows() != k || c.cols() != k)
    throw Error(ErrorKind::dimension_mismatch, "c must be k x k, got " + c.shape());

  Json report = Json::object();
  detail::Verdicts verdicts;
  Json input = Json::object();
  input["kind"] = kind;
  input["k"] = k;
  input["lambda"] = io::scalar_to_json(lambda);
  Json diagnostics;
  if (kind == "even") {
    if (k == 0) throw Error(ErrorKind::invalid_size, "even forms need k >= 1");
    const EvenCanonical ec{k, lambda, c};
    input["c"] = io::matrix_to_json(c);
    report["form"] = input;
    const StructurePrediction p = classify_even(ec);
    diagnostics = detail::prediction_to_json(p, verdicts, report);
    const EigenspaceReport es = eigenspace_even(ec);
    report["eigenspace"] = detail::vectors_to_json(es.literal);
    verdicts.put(report, "eigenspace_check", verdict_of(es.agrees));
  } else if (kind == "odd") {
    const Vector a = io::vector_from_json(io::field(form, "a")), b = io::vector_from_json(io::field(form, "b"));
    if (a.dim() != k || b.dim() != k) throw Error(ErrorKind::dimension_mismatch, "a and b must have k entries");
    const OddCanonical oc{k, lambda, a, b, c};
    input["a"] = io::vector_to_json(a);
    input["b"] = io::vector_to_json(b);
    input["c"] = io::matrix_to_json(c);
    report["form"] = input;
    const ConcentratedForm cf = reduce_to_concentrated(oc);
    report["concentrated"] = Json{{"a_k", io::scalar_to_json(cf.a_k)},
                                  {"b_1", io::scalar_to_json(cf.b_1)},
                                  {"last_row", io::vector_to_json(cf.last_row)}};
    StructurePrediction p = classify_odd(cf);
    // cycles of the concentrated form, carried back to the given block
    const Matrix back = inverse(cf.transform);
    for (auto& cyc : p.cycles)
      for (auto& v : cyc) v = back * v;
    p.canonical = oc.s();
    diagnostics = detail::prediction_to_json(p, verdicts, report);
    const EigenspaceReport es = eigenspace_odd(oc);
    report["eigenspace"] = detail::vectors_to_json(es.literal);
    verdicts.put(report, "eigenspace_check", verdict_of(es.agrees));
  } else {
    throw Error(ErrorKind::parse, "kind must be \"even\" or \"odd\"");
  }
  report["discrepancy_diagnostics"] = diagnostics;
  return Outcome{std::move(report), verdicts.any_fail ? exit_discrepancy : exit_ok};
}

namespace detail {

struct IdentityLog {
  Json entries = Json::array();
  bool any_fail = false;

  void add(const std::string& name, std::vector<std::size_t> chains, Verdict v, const std::string& note = "") {
    Json e = Json::object();
    e["identity"] = name;
    Json ids = Json::array();
    for (auto c : chains) ids.push_back(c + 1);
    e["chains"] = ids;
    e["verdict"] = to_string(v);
    if (!note.empty()) e["detail"] = note;
    entries.push_back(std::move(e));
    any_fail = any_fail || v == Verdict::fail;
  }

  void add(const std::string& name, std::vector<std::size_t> chains, const PatternCheck& pc) {
    std::string note;
    if (!pc.ok && pc.violation)
      note = "entry (" + std::to_string(pc.violation->i) + "," + std::to_string(pc.violation->j) + "): " +
             pc.violation->what;
    add(name, std::move(chains), verdict_of(pc.ok), note);
  }
};

template <typename T>
T resolvent_point(const DenseMatrix<T>& a) {
  for (long t = 0;; ++t) {
    const T x = scalar_traits<T>::from_exact(Scalar(t));
    if (exact_rank(shifted(a, x)) == a.rows()) return x;
  }
}

template <typename T>
Json verify_identities(const DenseMatrix<T>& a, const std::vector<BasicChainPair<T>>& chains, Json report) {
  IdentityLog log;
  const auto na = Verdict::not_applicable;
  const std::string broken = "chain fails its recurrence";
  std::vector<bool> valid;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const auto& ch = chains[c];
    const auto rv = right_chain_violation(a, ch.lambda, ch.right);
    const auto lv = left_chain_violation(a, ch.lambda, ch.left);
    log.add("right_chain_recurrence", {c}, verdict_of(!rv),
            rv ? "vector " + std::to_string(*rv + 1) + " breaks the recurrence" : "");
    log.add("left_chain_recurrence", {c}, verdict_of(!lv),
            lv ? "vector " + std::to_string(*lv + 1) + " breaks the recurrence" : "");
    valid.push_back(!rv && !lv && ch.left.size() == ch.right.size() && !ch.right.empty());
  }
  const T point = resolvent_point(a);
  report["resolvent_point"] = scalar_traits<T>::to_string(point);
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const auto& ch = chains[c];
    const std::size_t p = ch.right.size();
    if (!valid[c]) {
      for (const char* id : {"hankel_structure", "parity_vanishing", "middle_product", "resolvent_right",
                             "resolvent_left", "resolvent_orthogonality"})
        log.add(id, {c}, na, broken);
      continue;
    }
    const auto table = gram_table(ch.left, ch.right);
    log.add("hankel_structure", {c}, check_hankel(table));
    if (auto pv = check_parity_vanishing(table)) log.add("parity_vanishing", {c}, *pv);
    if (p % 2 == 1) {
      try {
        middle_product_nonzero(ch.left, ch.right);
        log.add("middle_product", {c}, Verdict::pass);
      } catch (const Error& e) {
        log.add("middle_product", {c}, Verdict::fail, e.what());
      }
    } else {
      log.add("middle_product", {c}, na, "even chain length");
    }
    auto each = [&](const char* id, auto apply) {
      try {
        for (std::size_t i = 1; i <= p; ++i) apply(i);
        log.add(id, {c}, Verdict::pass);
      } catch (const Error& e) {
        log.add(id, {c}, Verdict::fail, e.what());
      }
    };
    each("resolvent_right", [&](std::size_t i) { resolvent_apply_right(a, point, ch, i); });
    each("resolvent_left", [&](std::size_t i) { resolvent_apply_left(a, point, ch, i); });
    log.add("resolvent_orthogonality", {c}, verdict_of(resolvent_orthogonality_check(a, ch, point)));
  }
  for (std::size_t c = 0; c < chains.size(); ++c) {
    for (std::size_t d = 0; d < chains.size(); ++d) {
      if (c == d) continue;
      if (!valid[c] || !valid[d]) {
        log.add("cross_gram", {c, d}, na, broken);
        continue;
      }
      const auto table = gram_table(chains[c].left, chains[d].right);
      if (!(chains[c].lambda == chains[d].lambda)) {
        log.add("cross_orthogonality", {c, d}, check_all_zero(table));
      } else {
        log.add("cross_hankel_structure", {c, d}, check_hankel(table));
        if (auto pv = check_parity_vanishing(table)) log.add("cross_parity_vanishing", {c, d}, *pv);
      }
    }
  }
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& e : log.entries) {
    const std::string v = e.at("verdict").get<std::string>();
    ++counts[v == "pass" ? 0 : v == "fail" ? 1 : 2];
  }
  report["identities"] = log.entries;
  report["summary"] = Json{{"pass", counts[0]}, {"fail", counts[1]}, {"not_applicable", counts[2]}};
  return report;
}

inline std::vector<ChainPair> chains_from_json(const Json& j) {
  const Json& list = j.is_object() ? io::field(j, "chains") : j;
  if (!list.is_array()) throw Error(ErrorKind::parse, "chains must be an array");
  std::vector<ChainPair> out;
  for (const auto& c : list) out.push_back(io::chain_from_json(c));
  return out;
}

}  // namespace detail

/// Biorthogonality and resolvent identities for a matrix and chains of it.
inline Outcome cmd_verify(const Json& matrix_json, const Json& chains_json, io::Backend backend = io::Backend::exact) {
  const Matrix a = io::matrix_from_json(matrix_json.is_object() ? io::field(matrix_json, "matrix") : matrix_json);
  if (!a.is_square()) throw Error(ErrorKind::dimension_mismatch, "matrix must be square, got " + a.shape());
  const std::vector<ChainPair> chains = detail::chains_from_json(chains_json);
  for (const auto& c : chains) {
    if (c.left.size() != c.right.size())
      throw Error(ErrorKind::precondition, "left and right chains must have the same length");
    for (const auto& v : c.left) if (v.dim() != a.rows()) throw Error(ErrorKind::dimension_mismatch, "chain vector dimension");
    for (const auto& v : c.right) if (v.dim() != a.rows()) throw Error(ErrorKind::dimension_mismatch, "chain vector dimension");
  }
  Json report = Json::object();
  report["backend"] = io::to_string(backend);
  report["matrix"] = io::matrix_to_json(a);
  Json cj = Json::array();
  for (const auto& c : chains) cj.push_back(io::chain_to_json(c));
  report["chains"] = cj;
  if (backend == io::Backend::exact) {
    report = detail::verify_identities(a, chains, std::move(report));
  } else {
    std::vector<BasicChainPair<FloatScalar>> fc;
    for (const auto& c : chains) fc.push_back(detail::to_float(c));
    report = detail::verify_identities(eigshift::to_float(a), fc, std::move(report));
  }
  const bool failed = report.at("summary").at("fail").get<std::size_t>() > 0;
  return Outcome{std::move(report), failed ? exit_discrepancy : exit_ok};
}

/// Randomized end-to-end run: shift, predict, compare with the rank oracle.
/// Closed-form disagreements are counted but do not fail the run; wrong
/// authoritative structure, broken cycles or a failed spectrum check do.
inline Outcome cmd_selftest(std::uint64_t seed, std::size_t count) {
  RandomSource rng(seed);
  std::size_t mismatches = 0, closed_form_misses = 0, spectrum_fail = 0, half_chain_fail = 0, errors = 0;
  Json failures = Json::array();
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t m = rng.index(2, 6);
    try {
      const ShiftInstance inst = random_shift_instance(rng, m);
      const ShiftPrediction pred = predict_structure(inst.shift, inst.untouched, inst.syn.basis);
      const SegreCharacteristic oracle = oracle_segre(inst.shift.a_hat, inst.eigenvalues_after);
      if (!(pred.segre == oracle)) {
        ++mismatches;
        failures.push_back("instance " + std::to_string(t) + ": predicted " + pred.segre.to_string() + ", oracle " +
                           oracle.to_string());
      }
      if (!pred.local.closed_form_agrees()) ++closed_form_misses;
      if (!spectrum_multiset_check(inst.syn.a, inst.shift.a_hat, inst.chain.lambda, inst.lambda1, m)) ++spectrum_fail;
      if (!half_chain_invariance(inst.shift)) ++half_chain_fail;
    } catch (const Error& e) {
      ++errors;
      failures.push_back("instance " + std::to_string(t) + ": " + e.what());
    }
  }
  Json report = Json::object();
  report["seed"] = seed;
  report["instances"] = count;
  report["oracle_mismatches"] = mismatches;
  report["closed_form_disagreements"] = closed_form_misses;
  report["spectrum_failures"] = spectrum_fail;
  report["half_chain_failures"] = half_chain_fail;
  report["errors"] = errors;
  report["failures"] = failures;
  const bool bad = mismatches + spectrum_fail + half_chain_fail + errors > 0;
  return Outcome{std::move(report), bad ? exit_discrepancy : exit_ok};
}

}  // namespace eigshift::cli
