// hypcert: generate, verify and summarize cut-hyperplane certificates.
//
// Exit status: 0 success, 1 verification failure (or a decomposition that
// does not exist / was not found), 2 usage error.  Every option falls back to
// an environment variable HYPCERT_<NAME>.

#include "hypcert/hypcert.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

using namespace hypcert;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw usage_error("cannot write " + path);
  out << text;
}

Rational parse_width(const std::string& s) {
  const Rational w = parse_rational(s);
  if (w <= 0) throw usage_error("--width must be positive");
  return w;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  return out;
}

std::vector<FamilyCertificate> load_certificates(const std::string& path) {
  const auto doc = nlohmann::json::parse(read_input(path));
  std::vector<FamilyCertificate> out;
  for (const auto& j : certificate_documents(doc)) out.push_back(certificate_from_json(j));
  return out;
}

// ---------------------------------------------------------------------------

struct GenNoncompactOpts {
  std::string p = "2";
  unsigned kmax = 40;
  int n = kMinNoncompactDimension;
  std::string targets;
  std::string t;
  std::string width = "1/1000000000000";
  std::string out;
};

int run_gen_noncompact(const GenNoncompactOpts& o) {
  const Rational width = parse_width(o.width);
  std::vector<FamilyCertificate> certs;
  if (!o.targets.empty()) {
    if (o.t.empty()) throw usage_error("--targets needs --T");
    std::vector<BigInt> targets;
    for (const auto& s : split_list(o.targets)) targets.push_back(parse_bigint(s));
    certs = gen_noncompact_from_targets(targets, parse_bigint(o.t), o.n, width);
  } else {
    const BigInt p = parse_bigint(o.p);
    if (!is_prime(p)) throw usage_error("--p " + o.p + " is not prime");
    certs = gen_noncompact_family(p, o.kmax, o.n, width);
  }
  write_output(o.out, dump_certificates(certs));
  return kExitOk;
}

struct GenCompactOpts {
  std::string rho = "6+sqrt5";
  unsigned kmin = 1;
  unsigned kmax = 60;
  int n = kMinCompactDimension;
  std::string mode = "analytic";
  std::uint64_t budget = kDefaultThreeSquaresBudget;
  std::string width = "1/1000000000000";
  std::string out;
};

int run_gen_compact(const GenCompactOpts& o) {
  CompactOptions opt;
  opt.n = o.n;
  opt.mode = step_mode_from_string(o.mode);
  opt.budget = o.budget;
  opt.width = parse_width(o.width);
  const auto certs = gen_compact_family(parse_quad(o.rho, sqrt5_field()), o.kmin, o.kmax, opt);
  for (const auto& c : certs) {
    if (c.compact->budget_exhausted) std::cerr << "k=" << c.k << ": three-squares budget exhausted, step left analytic\n";
  }
  write_output(o.out, dump_certificates(certs));
  return kExitOk;
}

int run_verify(const std::string& path, bool verbose) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_input(path));
  } catch (const nlohmann::json::parse_error& e) {
    std::cout << path << ": FAIL schema: " << e.what() << '\n';
    return kExitFail;
  }
  std::vector<nlohmann::json> docs;
  try {
    docs = certificate_documents(doc);
  } catch (const std::exception& e) {
    std::cout << path << ": FAIL schema: " << e.what() << '\n';
    return kExitFail;
  }
  if (docs.empty()) {
    std::cout << path << ": FAIL schema: no certificates\n";
    return kExitFail;
  }
  std::size_t passed = 0;
  for (const auto& j : docs) {
    const auto rep = verify_json(j);
    const bool ok = rep.overall();
    passed += ok;
    std::cout << (rep.family.empty() ? "?" : rep.family) << " k=" << rep.k << ": " << (ok ? "ok" : "FAIL");
    if (!ok) {
      std::string names;
      for (const auto& n : rep.failed()) names += (names.empty() ? "" : ",") + n;
      std::cout << " [" << names << "]";
    } else if (rep.skipped_any()) {
      std::cout << " (some checks skipped)";
    }
    std::cout << '\n';
    for (const auto& c : rep.checks) {
      if (verbose || c.status != CheckStatus::pass) std::cout << "  " << to_string(c.status) << ' ' << c.name << ": " << c.witness << '\n';
    }
  }
  std::cout << passed << '/' << docs.size() << " certificates verified\n";
  return passed == docs.size() ? kExitOk : kExitFail;
}

int run_report(const std::string& path, const std::string& format, const std::string& out) {
  const auto certs = load_certificates(path);
  write_output(out, render_report(certs, report_format_from_string(format)));
  return kExitOk;
}

Vector parse_vector(const std::string& s, Field f) {
  Vector v;
  for (const auto& part : split_list(s)) v.push_back(parse_quad(part, f));
  return v;
}

int run_distance(const std::string& field_text, const std::string& coeffs, const std::string& v1s, const std::string& v2s,
                 const std::string& width_text) {
  const Field f = field_text == "rational" || field_text == "Q" ? Field::rational() : Field::quadratic(std::stoll(field_text));
  const Vector a = parse_vector(v1s, f);
  const Vector b = parse_vector(v2s, f);
  if (a.size() != b.size() || a.size() < 2) throw usage_error("--v1 and --v2 need the same length >= 2");
  std::vector<QuadElem> cs;
  if (coeffs.empty()) {
    cs.assign(a.size(), f.is_rational() ? QuadElem::rational(1) : QuadElem(f, 1, 0));
    cs[0] = -cs[0];
  } else {
    cs = parse_vector(coeffs, f);
  }
  const LorentzForm form(f, cs);
  const NormalVector v(form, a), w(form, b);
  const PairClass pc = classify_pair(v, w);
  std::cout << "form " << ambient_group_key(form) << '\n';
  std::cout << "class " << to_string(pc) << '\n';
  std::cout << "cosh^2 ratio " << to_string(cosh_sq_ratio(v, w)) << '\n';
  if (pc == PairClass::Ultraparallel) {
    const QuadElem c = cosh_sq_distance(v, w);
    const DistanceInterval d = distance_interval(c, parse_width(width_text));
    std::cout << "distance [" << to_fraction_string(d.lo) << ", " << to_fraction_string(d.hi) << "]\n";
    std::cout << "distance ~ " << to_decimal(d.midpoint(), kReportDigits) << '\n';
  }
  return kExitOk;
}

int run_three_squares(const std::string& d_text, const std::string& eps_text, std::uint64_t budget) {
  const std::int64_t d = std::stoll(d_text);
  const Field f = d == 1 ? Field::rational() : Field::quadratic(d);
  const QuadElem eps = parse_quad(eps_text, f);
  std::uint64_t tested = 0;
  std::optional<Triple> t;
  try {
    t = three_squares_decompose(eps, budget, &tested);
  } catch (const std::domain_error& e) {
    std::cout << e.what() << '\n';
    return kExitFail;
  }
  if (!t) {
    std::cout << "budget exhausted after " << tested << " pairs\n";
    return kExitFail;
  }
  QuadElem sum = eps.zero();
  for (const auto& g : *t) sum = sum + g * g;
  if (!(sum == eps)) throw std::logic_error("three-squares: returned triple does not sum to eps");
  std::cout << to_string((*t)[0]) << ", " << to_string((*t)[1]) << ", " << to_string((*t)[2]) << '\n';
  return kExitOk;
}

int run_decompose(const std::string& r_text) {
  const auto dec = decompose(parse_bigint(r_text));
  std::cout << "r=" << dec.r.str() << " b=" << dec.b.str() << " c=" << dec.c.str() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypcert: exact certificates for cut-hyperplane families"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hypcert 1.0");
  int status = kExitOk;

  GenNoncompactOpts gn;
  auto* gen_nc = app.add_subcommand("gen-noncompact", "Certificates for targets r_k = p^k over Q");
  gen_nc->add_option("--p", gn.p, "prime p")->envname("HYPCERT_P")->capture_default_str();
  gen_nc->add_option("--kmax", gn.kmax, "last index")->envname("HYPCERT_KMAX")->check(CLI::PositiveNumber)->capture_default_str();
  gen_nc->add_option("--n", gn.n, "hyperbolic dimension")->envname("HYPCERT_N")->capture_default_str();
  gen_nc->add_option("--targets", gn.targets, "comma-separated T-smooth targets instead of p^k")->envname("HYPCERT_TARGETS");
  gen_nc->add_option("--T", gn.t, "smoothness bound for --targets")->envname("HYPCERT_T");
  gen_nc->add_option("--width", gn.width, "distance interval width (rational)")->envname("HYPCERT_WIDTH")->capture_default_str();
  gen_nc->add_option("--out", gn.out, "output file (default stdout)")->envname("HYPCERT_OUT");
  gen_nc->callback([&] { status = run_gen_noncompact(gn); });

  GenCompactOpts gc;
  auto* gen_c = app.add_subcommand("gen-compact", "Certificates for rho^k over Q(sqrt5)");
  gen_c->add_option("--rho", gc.rho, "rho as A+Bsqrt5")->envname("HYPCERT_RHO")->capture_default_str();
  gen_c->add_option("--kmin", gc.kmin, "first index")->envname("HYPCERT_KMIN")->check(CLI::PositiveNumber)->capture_default_str();
  gen_c->add_option("--kmax", gc.kmax, "last index")->envname("HYPCERT_KMAX")->check(CLI::PositiveNumber)->capture_default_str();
  gen_c->add_option("--n", gc.n, "hyperbolic dimension")->envname("HYPCERT_N")->capture_default_str();
  gen_c->add_option("--mode", gc.mode, "analytic or explicit")
      ->envname("HYPCERT_MODE")
      ->check(CLI::IsMember({"analytic", "explicit"}))
      ->capture_default_str();
  gen_c->add_option("--budget", gc.budget, "three-squares pair budget per step")->envname("HYPCERT_BUDGET")->capture_default_str();
  gen_c->add_option("--width", gc.width, "distance interval width (rational)")->envname("HYPCERT_WIDTH")->capture_default_str();
  gen_c->add_option("--out", gc.out, "output file (default stdout)")->envname("HYPCERT_OUT");
  gen_c->callback([&] { status = run_gen_compact(gc); });

  std::string verify_file;
  bool verbose = false;
  auto* ver = app.add_subcommand("verify", "Re-verify a certificate file");
  ver->add_option("file", verify_file, "certificate file, or - for stdin")->envname("HYPCERT_FILE")->required();
  ver->add_flag("--verbose,-v", verbose, "print every check")->envname("HYPCERT_VERBOSE");
  ver->callback([&] { status = run_verify(verify_file, verbose); });

  std::string report_file, report_format = "table", report_out;
  auto* rep = app.add_subcommand("report", "Summarize a certificate family");
  rep->add_option("file", report_file, "certificate file, or - for stdin")->envname("HYPCERT_FILE")->required();
  rep->add_option("--format", report_format, "table, csv or json")
      ->envname("HYPCERT_FORMAT")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  rep->add_option("--out", report_out, "output file (default stdout)")->envname("HYPCERT_OUT");
  rep->callback([&] { status = run_report(report_file, report_format, report_out); });

  std::string dist_field = "rational", dist_coeffs, dist_v1, dist_v2, dist_width = "1/1000000000000";
  auto* dist = app.add_subcommand("distance", "Classify a pair of hyperplanes and bound their distance");
  dist->add_option("--field", dist_field, "rational or a squarefree d")->envname("HYPCERT_FIELD")->capture_default_str();
  dist->add_option("--coeffs", dist_coeffs, "diagonal form coefficients (default -1,1,...,1)")->envname("HYPCERT_COEFFS");
  dist->add_option("--v1", dist_v1, "first normal vector, comma-separated")->envname("HYPCERT_V1")->required();
  dist->add_option("--v2", dist_v2, "second normal vector, comma-separated")->envname("HYPCERT_V2")->required();
  dist->add_option("--width", dist_width, "distance interval width (rational)")->envname("HYPCERT_WIDTH")->capture_default_str();
  dist->callback([&] { status = run_distance(dist_field, dist_coeffs, dist_v1, dist_v2, dist_width); });

  std::string ts_d = "5", ts_eps;
  std::uint64_t ts_budget = kDefaultThreeSquaresBudget;
  auto* ts = app.add_subcommand("three-squares", "Write eps as a sum of three squares in O_K");
  ts->add_option("--d", ts_d, "field discriminant parameter (1 for Q)")->envname("HYPCERT_D")->capture_default_str();
  ts->add_option("--eps", ts_eps, "totally positive integral eps")->envname("HYPCERT_EPS")->required();
  ts->add_option("--budget", ts_budget, "pair budget")->envname("HYPCERT_BUDGET")->capture_default_str();
  ts->callback([&] { status = run_three_squares(ts_d, ts_eps, ts_budget); });

  std::string dec_r;
  auto* dec = app.add_subcommand("decompose", "Write r = b^2 - 2c - 1 with minimal b");
  dec->add_option("r", dec_r, "positive integer")->envname("HYPCERT_R")->required();
  dec->callback([&] { status = run_decompose(dec_r); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  } catch (const schema_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return status;
}
