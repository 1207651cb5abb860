#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tropcert/certificate.hpp"
#include "tropcert/cyclic.hpp"
#include "tropcert/error.hpp"
#include "tropcert/json_io.hpp"
#include "tropcert/mixed_volume.hpp"
#include "tropcert/polynomial.hpp"
#include "tropcert/solver.hpp"
#include "tropcert/tropism.hpp"

using namespace tropcert;

namespace {

// Flagged separately from tropcert::Error so bad inputs exit 2 while
// failures inside a computation exit 3.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string cert_file;
  std::string format = "text";
  std::string orbits;
  std::uint64_t seed = 0xC0FFEE;
  int jobs = 1;
  bool tau = false;
};

LaurentSystem load_system(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  try {
    return parse_system(text);
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  try {
    return nlohmann::json::parse(f);
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<Certificate> load_certificates(const std::string& path, int nvars) {
  nlohmann::json j = load_json(path);
  std::vector<Certificate> out;
  try {
    if (j.is_object() && j.contains("tropisms")) {
      for (const auto& tr : j.at("tropisms"))
        for (const auto& c : tr.at("certificates")) out.push_back(certificate_from_json(c));
    } else if (j.is_array()) {
      for (const auto& c : j) out.push_back(certificate_from_json(c));
    } else {
      out.push_back(certificate_from_json(j));
    }
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  if (out.empty()) throw InputError(path + ": no certificates");
  for (const auto& c : out)
    if ((int)c.nu.size() != nvars)
      throw InputError(path + ": certificate has " + std::to_string(c.nu.size()) +
                       " coordinates, system has " + std::to_string(nvars));
  return out;
}

// "(1 2 3 4)" style cycles on 1-based positions; ';' separates generators.
std::vector<std::vector<int>> parse_generators(const std::string& text, int n) {
  std::vector<std::vector<int>> gens;
  std::stringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ';')) {
    std::vector<int> g((size_t)n);
    for (int i = 0; i < n; ++i) g[(size_t)i] = i;
    size_t pos = 0;
    bool any = false;
    while ((pos = part.find('(', pos)) != std::string::npos) {
      size_t end = part.find(')', pos);
      if (end == std::string::npos) throw InputError("unbalanced '(' in generators");
      std::stringstream cyc(part.substr(pos + 1, end - pos - 1));
      std::vector<int> members;
      int v = 0;
      while (cyc >> v) {
        if (v < 1 || v > n) throw InputError("cycle entry out of range: " + std::to_string(v));
        members.push_back(v - 1);
      }
      for (size_t k = 0; k < members.size(); ++k)
        g[(size_t)members[k]] = members[(k + 1) % members.size()];
      any = true;
      pos = end + 1;
    }
    if (!any) continue;
    std::vector<bool> seen((size_t)n, false);
    for (int img : g) {
      if (seen[(size_t)img]) throw InputError("cycles overlap: not a permutation");
      seen[(size_t)img] = true;
    }
    gens.push_back(std::move(g));
  }
  if (gens.empty()) throw InputError("no cycles in generator list");
  return gens;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

// Snaps display-invisible parts to zero; JSON output carries the raw values.
Cplx display_value(const Cplx& z) {
  double scale = std::abs(z);
  double re = std::abs(z.real()) <= 1e-12 * (1.0 + scale) ? 0.0 : z.real();
  double im = std::abs(z.imag()) <= 1e-12 * (1.0 + scale) ? 0.0 : z.imag();
  return {re, im};
}

std::string fmt_cplx(const Cplx& z0) {
  Cplx z = display_value(z0);
  if (z.imag() == 0.0) return fmt_double(z.real());
  std::string s = "(" + fmt_double(z.real());
  s += z.imag() < 0 ? " - " : " + ";
  s += fmt_double(std::abs(z.imag())) + "*i)";
  return s;
}

std::string fmt_vec(const IntVector& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + ")";
}

std::string fmt_term(const Cplx& c0, long e) {
  Cplx c = display_value(c0);
  std::string p = e == 0 ? "" : e == 1 ? "t" : "t^" + std::to_string(e);
  if (p.empty()) return fmt_cplx(c);
  if (c == Cplx(1.0, 0.0)) return p;
  if (c == Cplx(-1.0, 0.0)) return "-" + p;
  return fmt_cplx(c) + "*" + p;
}

std::string fmt_series(const Certificate& cert, size_t j) {
  std::string s = fmt_term(cert.c[j], cert.nu[j].get_si());
  if (cert.mu && cert.d) {
    std::string second = fmt_term((*cert.d)[j], (*cert.mu)[j].get_si());
    if (second[0] == '-')
      s += " - " + second.substr(1);
    else
      s += " + " + second;
  }
  return s;
}

std::string fmt_gain(int gain) {
  return gain == kExactZero ? "exact-zero" : "order gain " + std::to_string(gain);
}

std::string var_name(const LaurentSystem& s, size_t j) {
  return j < s.names.size() ? s.names[j] : default_var_name((int)j);
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

int run_tropisms(const Options& opt) {
  LaurentSystem s = load_system(opt.input);
  std::vector<Tropism> trops = enumerate_pretropisms(s);
  std::vector<IntVector> vs;
  for (const auto& t : trops) vs.push_back(t.v);

  std::vector<std::vector<int>> orbits;
  if (!opt.orbits.empty()) {
    auto gens = opt.orbits == "cyclic" ? cyclic_generators(s.nvars)
                                       : parse_generators(opt.orbits, s.nvars);
    orbits = group_orbits(vs, gens);
  }

  if (opt.format == "json") {
    nlohmann::json j;
    j["tropisms"] = nlohmann::json::array();
    for (const auto& v : vs) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& e : v) row.push_back(e.get_si());
      j["tropisms"].push_back(row);
    }
    j["count"] = vs.size();
    if (!opt.orbits.empty()) j["orbits"] = orbits;
    emit(j);
    return 0;
  }
  for (const auto& v : vs) std::cout << fmt_vec(v) << "\n";
  std::cout << vs.size() << (vs.size() == 1 ? " tropism" : " tropisms");
  if (!opt.orbits.empty())
    std::cout << " in " << orbits.size() << (orbits.size() == 1 ? " orbit" : " orbits");
  std::cout << "\n";
  for (size_t k = 0; k < orbits.size(); ++k) {
    std::cout << "orbit " << k + 1 << ":";
    for (int i : orbits[k]) std::cout << " " << i + 1;
    std::cout << "\n";
  }
  return 0;
}

int run_certify(const Options& opt) {
  LaurentSystem s = load_system(opt.input);
  int neq = (int)s.polys.size();
  if (neq != s.nvars && neq != s.nvars - 1)
    throw InputError("need a square or (n-1) x n system, got " + std::to_string(neq) +
                     " equations in " + std::to_string(s.nvars) + " variables");
  PipelineReport rep = certify_curves(s, opt.seed, opt.jobs);

  long total = 0;
  int ncerts = 0;
  for (const auto& tr : rep.tropisms)
    for (const auto& c : tr.certificates) {
      total += c.degree;
      ++ncerts;
    }
  const char* caveat = "branches with constant first coordinate are not counted";

  if (opt.format == "json") {
    nlohmann::json j = report_json(rep);
    j.erase("seconds"); // keep output byte-identical across runs
    j["total_degree"] = total;
    j["caveat"] = caveat;
    emit(j);
    return 0;
  }
  if (rep.tropisms.empty()) {
    std::cout << "no tropisms: no algebraic curve in the torus\n";
    return 0;
  }
  for (const auto& tr : rep.tropisms) {
    std::cout << "tropism " << fmt_vec(tr.v) << ": " << outcome_label(tr.outcome) << " ("
              << tr.initial_root_count
              << (tr.initial_root_count == 1 ? " initial root)" : " initial roots)") << "\n";
    for (const auto& cert : tr.certificates) {
      std::cout << "  certificate: degree " << cert.degree << ", verification "
                << fmt_gain(cert.verified_order) << "\n";
      for (size_t j = 0; j < cert.nu.size(); ++j)
        std::cout << "    " << var_name(s, j) << " = " << fmt_series(cert, j) << "\n";
    }
    if (!tr.note.empty()) std::cout << "  note: " << tr.note << "\n";
  }
  std::cout << "total degree " << total << " over " << ncerts
            << (ncerts == 1 ? " certificate" : " certificates") << "\n";
  std::cout << "note: " << caveat << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", rep.seconds);
  std::cout << buf << " s\n";
  return 0;
}

int run_verify(const Options& opt) {
  LaurentSystem s = load_system(opt.input);
  auto certs = load_certificates(opt.cert_file, s.nvars);
  std::vector<int> gains;
  for (const auto& cert : certs) gains.push_back(verify(s, cert));

  if (opt.format == "json") {
    nlohmann::json j;
    j["results"] = nlohmann::json::array();
    for (int g : gains) {
      if (g == kExactZero)
        j["results"].push_back("exact-zero");
      else
        j["results"].push_back(g);
    }
    emit(j);
    return 0;
  }
  for (size_t i = 0; i < gains.size(); ++i)
    std::cout << "certificate " << i + 1 << ": " << fmt_gain(gains[i]) << "\n";
  return 0;
}

int run_degree(const Options& opt) {
  LaurentSystem s = load_system(opt.input);
  auto certs = load_certificates(opt.cert_file, s.nvars);
  long total = 0;
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < certs.size(); ++i) {
    long spread = degree(certs[i], 1);
    long hyper = degree_by_hyperplane(s, certs[i], opt.seed);
    total += spread;
    if (opt.format == "json") {
      rows.push_back({{"spread", spread}, {"hyperplane", hyper}, {"agree", spread == hyper}});
    } else {
      std::cout << "certificate " << i + 1 << ": exponent spread " << spread
                << ", hyperplane degree " << hyper << (spread == hyper ? ", agree" : ", DISAGREE")
                << "\n";
    }
  }
  if (opt.format == "json") {
    emit({{"certificates", rows}, {"total_degree", total}});
  } else {
    std::cout << "total degree " << total << "\n";
  }
  return 0;
}

int run_mixedvol(const Options& opt) {
  LaurentSystem s = load_system(opt.input);
  std::vector<std::vector<IntVector>> supports;
  for (const auto& p : s.polys) supports.push_back(support(p));

  if (opt.tau) {
    auto lifted = lift_tau_tuple(supports, opt.seed);
    auto cells = mixed_cells(lifted, true, opt.jobs);
    auto dirs = tropisms_from_cells(cells);
    if (opt.format == "json") {
      nlohmann::json j;
      j["zero_slack_cells"] = cells.size();
      j["directions"] = nlohmann::json::array();
      for (const auto& v : dirs) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& e : v) row.push_back(e.get_si());
        j["directions"].push_back(row);
      }
      emit(j);
      return 0;
    }
    for (const auto& v : dirs) std::cout << fmt_vec(v) << "\n";
    std::cout << dirs.size() << (dirs.size() == 1 ? " direction" : " directions") << " from "
              << cells.size() << (cells.size() == 1 ? " zero-slack cell" : " zero-slack cells")
              << "\n";
    return 0;
  }

  if ((int)supports.size() != s.nvars)
    throw InputError("mixed volume needs as many equations as variables, got " +
                     std::to_string(supports.size()) + " in " + std::to_string(s.nvars));
  Int mv = mixed_volume(supports, opt.seed);
  if (opt.format == "json") {
    emit({{"mixed_volume", mv.get_si()}});
  } else {
    std::cout << "mixed volume " << mv.get_str() << "\n";
  }
  return 0;
}

int run_solve(const Options& opt) {
  LaurentSystem s = load_system(opt.input);
  if ((int)s.polys.size() != s.nvars)
    throw InputError("solve needs a square system, got " + std::to_string(s.polys.size()) +
                     " equations in " + std::to_string(s.nvars) + " variables");
  SolveReport rep = solve_square_numeric(s, opt.seed, opt.jobs);

  if (opt.format == "json") {
    nlohmann::json j;
    j["finite"] = rep.roots.size();
    j["at_infinity"] = rep.at_infinity;
    j["failures"] = rep.failures;
    j["roots"] = nlohmann::json::array();
    for (const auto& r : rep.roots) {
      nlohmann::json row;
      row["coords"] = nlohmann::json::array();
      for (const auto& z : r.coords) row["coords"].push_back({{"re", z.real()}, {"im", z.imag()}});
      row["residual"] = r.residual;
      row["suspect"] = r.suspect;
      j["roots"].push_back(row);
    }
    emit(j);
    return 0;
  }
  std::cout << "finite " << rep.roots.size() << ", at infinity " << rep.at_infinity
            << ", failures " << rep.failures << "\n";
  for (size_t i = 0; i < rep.roots.size(); ++i) {
    const auto& r = rep.roots[i];
    std::cout << "root " << i + 1 << ": (";
    for (size_t k = 0; k < r.coords.size(); ++k) {
      if (k) std::cout << ", ";
      std::cout << fmt_cplx(r.coords[k]);
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2e", r.residual);
    std::cout << ") residual " << buf << (r.suspect ? " suspect" : "") << "\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"certify algebraic curves of sparse polynomial systems"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool cert_arg = false) {
    sub->add_option("input", opt.input, "polynomial system file")->required();
    if (cert_arg)
      sub->add_option("certificates", opt.cert_file, "certificate JSON (single or full report)")
          ->required();
    sub->add_option("--seed", opt.seed, "random seed (default 0xC0FFEE)");
    sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  auto* trop = app.add_subcommand("tropisms", "enumerate candidate curve directions");
  add_common(trop);
  trop->add_option("--orbits", opt.orbits, "group under 'cyclic' or explicit cycles '(1 2 3)'");

  auto* cert = app.add_subcommand("certify", "run the full curve certification pipeline");
  add_common(cert);

  auto* veri = app.add_subcommand("verify", "recheck certificates against a system");
  add_common(veri, true);

  auto* degr = app.add_subcommand("degree", "degree of certified curves, two ways");
  add_common(degr, true);

  auto* mixv = app.add_subcommand("mixedvol", "mixed volume of the system's supports");
  add_common(mixv);
  mixv->add_flag("--tau", opt.tau, "slack lifting; reports zero-slack cell directions");

  auto* solv = app.add_subcommand("solve", "numeric roots of a square system");
  add_common(solv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (trop->parsed()) return run_tropisms(opt);
    if (cert->parsed()) return run_certify(opt);
    if (veri->parsed()) return run_verify(opt);
    if (degr->parsed()) return run_degree(opt);
    if (mixv->parsed()) return run_mixedvol(opt);
    if (solv->parsed()) return run_solve(opt);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
