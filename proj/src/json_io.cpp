#include "tropcert/json_io.hpp"

#include "tropcert/error.hpp"

namespace tropcert {

namespace {

nlohmann::json intvector_json(const IntVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : v) out.push_back(e.get_si());
  return out;
}

IntVector intvector_from(const nlohmann::json& j) {
  IntVector v;
  for (const auto& e : j) v.push_back(Int(e.get<long>()));
  return v;
}

nlohmann::json terms_json(const IntVector& exps, const std::vector<Cplx>& coefs) {
  nlohmann::json out = nlohmann::json::array();
  for (size_t i = 0; i < exps.size(); ++i) {
    out.push_back({{"exp", exps[i].get_si()},
                   {"re", coefs[i].real()},
                   {"im", coefs[i].imag()}});
  }
  return out;
}

void terms_from(const nlohmann::json& j, IntVector& exps, std::vector<Cplx>& coefs) {
  for (const auto& t : j) {
    exps.push_back(Int(t.at("exp").get<long>()));
    coefs.emplace_back(t.at("re").get<double>(), t.at("im").get<double>());
  }
}

} // namespace

nlohmann::json certificate_json(const Certificate& cert) {
  nlohmann::json j;
  j["tropism"] = intvector_json(cert.v);
  j["nu1"] = cert.nu1;
  j["leading"] = terms_json(cert.nu, cert.c);
  if (cert.mu && cert.d) j["second"] = terms_json(*cert.mu, *cert.d);
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < cert.m.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < cert.m.cols; ++k) row.push_back(cert.m(i, k).get_si());
    rows.push_back(row);
  }
  j["transform"] = rows;
  j["degree"] = cert.degree;
  if (cert.verified_order == kExactZero)
    j["verified_order_gain"] = "exact-zero";
  else
    j["verified_order_gain"] = cert.verified_order;
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate cert;
  cert.v = intvector_from(j.at("tropism"));
  cert.nu1 = j.at("nu1").get<int>();
  terms_from(j.at("leading"), cert.nu, cert.c);
  if (j.contains("second")) {
    IntVector mu;
    std::vector<Cplx> d;
    terms_from(j.at("second"), mu, d);
    cert.mu = std::move(mu);
    cert.d = std::move(d);
  }
  const auto& rows = j.at("transform");
  int n = (int)rows.size();
  cert.m = IntMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    if ((int)rows[(size_t)i].size() != n) throw Error("transform must be square");
    for (int k = 0; k < n; ++k) cert.m(i, k) = Int(rows[(size_t)i][(size_t)k].get<long>());
  }
  cert.degree = j.at("degree").get<long>();
  const auto& gain = j.at("verified_order_gain");
  cert.verified_order = gain.is_string() ? kExactZero : gain.get<int>();
  return cert;
}

nlohmann::json report_json(const PipelineReport& rep) {
  nlohmann::json out;
  out["seconds"] = rep.seconds;
  nlohmann::json trops = nlohmann::json::array();
  for (const auto& tr : rep.tropisms) {
    nlohmann::json t;
    t["tropism"] = intvector_json(tr.v);
    t["outcome"] = outcome_label(tr.outcome);
    t["initial_root_count"] = tr.initial_root_count;
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& c : tr.certificates) certs.push_back(certificate_json(c));
    t["certificates"] = certs;
    if (!tr.note.empty()) t["note"] = tr.note;
    trops.push_back(t);
  }
  out["tropisms"] = trops;
  return out;
}

} // namespace tropcert
