#include "matring/report.hpp"

#include <cmath>
#include <sstream>

namespace matring::report {
namespace {

Json eig_json(std::complex<double> z) { return Json::array({clean(z.real()), clean(z.imag())}); }

Json entry_json(const SpectrumEntry& e) {
  Json j;
  j["label"] = e.label;
  if (e.representative) j["rep"] = to_literal(*e.representative);
  j["eig"] = eig_json(e.eigenvalue);
  j["mult"] = e.multiplicity;
  return j;
}

Json codes_json(const std::vector<FieldElem>& elems) {
  Json j = Json::array();
  for (auto e : elems) j.push_back(e.code);
  return j;
}

std::string format_double(double x) {
  std::ostringstream out;
  out.precision(12);
  out << clean(x);
  return out.str();
}

}  // namespace

double clean(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9) x = r;
  return x == 0.0 ? 0.0 : x;
}

Json field_json(const FieldSpec& f) {
  Json j;
  j["p"] = f.p();
  j["k"] = f.k();
  j["q"] = f.q();
  j["poly"] = std::vector<int>(f.irreducible().begin(), f.irreducible().end());
  return j;
}

Json matrix_json(const Matrix& m) { return to_literal(m); }

Json error_json(const Error& e) {
  Json j;
  j["error"] = std::string(to_string(e.code()));
  j["message"] = e.what();
  return j;
}

Json counts_json(int n, long long q) {
  const auto c = group_counts(n, q);
  Json j;
  j["n"] = n;
  j["q"] = q;
  j["gl"] = c.gl_order.str();
  j["sl"] = c.sl_order.str();
  j["ring"] = c.ring_order.str();
  j["phi"] = rational_string(c.phi);
  return j;
}

Json spectrum_json(const SpectrumReport& r) {
  Json j;
  j["graph"] = {{"n", r.n}, {"q", r.q}, {"connection", r.graph_connection}};
  j["classes"] = Json::array();
  for (const auto& e : r.classes) j["classes"].push_back(entry_json(e));
  j["merged"] = Json::array();
  for (const auto& e : r.merged) {
    j["merged"].push_back({{"eig", eig_json(e.eigenvalue)}, {"mult", e.multiplicity}});
  }
  j["multiplicity_sum"] = r.multiplicity_sum();
  j["all_real"] = r.all_real;
  j["all_integer"] = r.all_integer;
  return j;
}

std::string spectrum_csv(const SpectrumReport& r) {
  std::string out = "label,rep,re,im,mult\n";
  for (const auto& e : r.classes) {
    out += e.label + "," + (e.representative ? "\"" + to_literal(*e.representative) + "\"" : "") + "," +
           format_double(e.eigenvalue.real()) + "," + format_double(e.eigenvalue.imag()) + "," +
           std::to_string(e.multiplicity) + "\n";
  }
  return out;
}

Json normal_form_json(const Matrix& a, const NormalFormWitness& w) {
  Json j;
  j["input"] = to_literal(a);
  j["P"] = to_literal(w.P);
  j["Q"] = to_literal(w.Q);
  j["D"] = to_literal(w.D);
  j["rank"] = w.rank;
  j["det"] = det(a).code;
  Json ops = Json::array();
  for (const auto& op : w.ops) {
    ops.push_back({{"type", op.kind == ElementaryOp::Kind::Type1 ? 1 : 2},
                   {"side", op.side == ElementaryOp::Side::Row ? "row" : "col"},
                   {"i", op.i},
                   {"j", op.j},
                   {"scalar", op.scalar.code}});
  }
  j["ops"] = std::move(ops);
  j["verified"] = verify_normal_form(a, w);
  return j;
}

Json decomposition_json(const DecompositionWitness& w) {
  Json j;
  j["mode"] = std::string(to_string(w.mode));
  j["target"] = to_literal(w.target);
  j["summands"] = Json::array();
  for (const auto& s : w.summands) {
    j["summands"].push_back({{"matrix", to_literal(s)}, {"det", det(s).code}});
  }
  j["verified"] = verify_decomposition(w);
  return j;
}

Json reachability_json(const CayleyGraphSpec& g, const Reachability& r) {
  Json j;
  j["graph"] = {{"n", g.n()}, {"q", g.field()->q()}, {"connection", g.connection().label()}};
  j["connected"] = r.connected;
  j["diameter"] = r.diameter ? Json(*r.diameter) : Json(nullptr);
  j["eccentricity"] = r.eccentricity;
  return j;
}

Json srg_json(const CayleyGraphSpec& g, const std::optional<SrgParams>& params) {
  Json j;
  j["graph"] = {{"n", g.n()}, {"q", g.field()->q()}, {"connection", g.connection().label()}};
  j["strongly_regular"] = params.has_value();
  if (params) {
    j["params"] = {{"v", params->v}, {"k", params->k}, {"a", params->a}, {"c", params->c}};
    const auto s = srg_eigen_from_params(*params);
    j["eigenvalues"] = {{"k", clean(s.k)},
                        {"lambda2", clean(s.lambda2)},
                        {"lambda3", clean(s.lambda3)},
                        {"m2", s.m2},
                        {"m3", s.m3}};
  } else {
    j["verdict"] = "not strongly regular";
  }
  return j;
}

Json kloosterman_json(const Field& field) {
  Json j;
  j["q"] = field->q();
  j["rows"] = Json::array();
  for (auto delta : field->units()) {
    const auto k = kloosterman(delta, field);
    j["rows"].push_back({{"delta", delta.code},
                         {"K", clean(k.value)},
                         {"weil_bound", k.weil_bound},
                         {"within_weil", k.within_weil()}});
  }
  return j;
}

std::string kloosterman_csv(const Field& field) {
  std::string out = "q,delta,K,weil_bound\n";
  for (auto delta : field->units()) {
    const auto k = kloosterman(delta, field);
    out += std::to_string(field->q()) + "," + std::to_string(delta.code) + "," +
           format_double(k.value) + "," + format_double(k.weil_bound) + "\n";
  }
  return out;
}

Json gap_check_json(const Field& field, FieldElem alpha, const SubsetOfRing& x,
                    const SubsetOfRing& y, const std::optional<DetWitness>& w) {
  const auto t = gap_threshold(field);
  const double size = std::sqrt(static_cast<double>(x.size()) * static_cast<double>(y.size()));
  Json j;
  j["q"] = field->q();
  j["alpha"] = alpha.code;
  j["X"] = x.size();
  j["Y"] = y.size();
  j["sqrt_XY"] = size;
  j["threshold"] = {{"exact", t.exact}, {"proof", t.proof_nstar}, {"weil", t.weil}};
  j["above_exact"] = size > t.exact;
  j["witness"] = w ? Json{{"M", to_literal(w->m)}, {"N", to_literal(w->n)}} : Json(nullptr);
  return j;
}

Json sumprod_json(const SumProdResult& r, const std::vector<const SubsetOfField*>& sets) {
  static const char* const names[] = {"A", "B", "C", "D"};
  Json j;
  j["q"] = sets.front()->field()->q();
  Json sizes;
  for (std::size_t i = 0; i < sets.size() && i < 4; ++i) sizes[names[i]] = sets[i]->size();
  j["sizes"] = std::move(sizes);
  j["set"] = codes_json(r.set);
  j["covers_all"] = r.covers_all;
  j["four_set"] = {{"threshold", r.four_set_threshold},
                   {"hypothesis", r.four_set_hypothesis},
                   {"vacuous", r.four_set_vacuous}};
  j["single_set"] = {{"threshold", r.single_set_threshold},
                     {"hypothesis", r.single_set_hypothesis},
                     {"vacuous", r.single_set_vacuous}};
  return j;
}

}  // namespace matring::report
