#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pfano/cli.hpp"
#include "pfano/exclusion.hpp"
#include "pfano/geometry.hpp"
#include "pfano/hilbert.hpp"

namespace pfano {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string family;
  std::uint64_t seed = 1;
  std::optional<std::uint32_t> prime;
  std::size_t budget = kDefaultBudget;
  std::string member_path;
  std::string centre;
  std::string out_path;
  std::string condition;
  std::string negative_control;
  bool allow_inconclusive = false;
  bool serial = false;
  int terms = 60;
};

// Everything a command needs after flags, environment and member file have been reconciled.
struct Resolved {
  const FamilySpec* spec = nullptr;
  std::optional<FpMatrix> member;
  RunMetadata meta;
};

std::uint32_t checked_prime(std::uint64_t p, const std::string& origin) {
  if (p <= 7 || p > 0xffffffffu || !is_prime(p))
    throw UsageError(origin + " " + std::to_string(p) + " is not a prime above 7");
  return static_cast<std::uint32_t>(p);
}

Resolved resolve(const Options& o, bool needs_family) {
  Resolved r;
  if (o.budget == 0) throw UsageError("--budget must be positive");
  r.meta.seed = o.seed;
  r.meta.budget = o.budget;
  r.meta.prime = 10007;
  if (o.prime) {
    r.meta.prime = checked_prime(*o.prime, "--prime");
    r.meta.prime_source = "flag";
  } else if (const char* env = std::getenv(kPrimeEnv); env && *env) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end) throw UsageError(std::string(kPrimeEnv) + " is not a number");
    r.meta.prime = checked_prime(v, kPrimeEnv);
    r.meta.prime_source = "environment";
  }
  std::string id = o.family;
  if (!o.member_path.empty()) {
    MemberFile mf = load_member_file(o.member_path, r.meta.prime);
    if (!id.empty() && id != mf.id) throw UsageError("family " + id + " disagrees with member file id " + mf.id);
    id = mf.id;
    if (mf.prime && *mf.prime != r.meta.prime) {
      if (o.prime) throw UsageError("--prime disagrees with the member file coefficient field");
      r.meta.prime = *mf.prime;
      r.meta.prime_source = "member-file";
    }
    r.member = std::move(mf.member);
  }
  if (!id.empty()) {
    try {
      r.spec = &family(id);
    } catch (const std::out_of_range&) {
      throw UsageError("unknown family '" + id + "'");
    }
  } else if (needs_family) {
    throw UsageError("a family id or --member file is required");
  }
  return r;
}

CertifyOptions certify_options(const Options& o, const Resolved& r) {
  CertifyOptions c;
  c.seed = r.meta.seed;
  c.prime = r.meta.prime;
  c.budget = r.meta.budget;
  c.negative_control = o.negative_control;
  c.parallel = !o.serial;
  c.member = r.member ? &*r.member : nullptr;
  if (c.member) c.max_attempts = 1;
  return c;
}

std::string meta_line(const RunMetadata& m) {
  return "# seed " + std::to_string(m.seed) + ", prime " + std::to_string(m.prime) + " (" + m.prime_source + ")\n";
}

FpMatrix member_of(const Resolved& r) {
  if (r.member) return *r.member;
  return sample_member(*r.spec, r.meta.seed, PrimeField(r.meta.prime));
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("error writing " + path);
}

std::string basket_str(const std::vector<BasketEntry>& b) {
  std::string s;
  for (const auto& e : b) {
    if (!s.empty()) s += ", ";
    s += type_str(e.r, e.a);
    if (e.multiplicity > 1) s += " x" + std::to_string(e.multiplicity);
  }
  return s.empty() ? "(empty)" : s;
}

int cmd_catalog(std::ostream& out) {
  for (const auto& s : family_catalog()) {
    out << s.id << "  P(";
    for (int i = 0; i < kVars; ++i) out << (i ? "," : "") << s.space.weights[i];
    out << ")  A3=" << rational_str(s.A3) << "  basket: " << basket_str(s.basket) << "\n";
  }
  return 0;
}

int cmd_degree(const Resolved& r, std::ostream& out, std::ostream& err) {
  Rational a3 = anticanonical_degree(hilbert_numerator(*r.spec));
  out << rational_str(a3) << "\n";
  if (a3 != r.spec->A3) {
    err << "mismatch: catalog lists " << rational_str(r.spec->A3) << "\n";
    return 1;
  }
  return 0;
}

int cmd_basket(const Resolved& r, std::ostream& out, std::ostream& err) {
  FpMatrix M = member_of(r);
  Equations X = compute_pfaffians(M);
  SingularScan scan = singular_scan(X, r.spec->space, r.meta.seed, r.meta.budget);
  auto got = normalised_basket(basket_of(scan));
  out << meta_line(r.meta) << r.spec->id << ": " << basket_str(got) << "\n";
  for (const auto& p : scan.problems) err << "problem: " << p << "\n";
  if (got != normalised_basket(r.spec->basket)) {
    err << "mismatch: catalog basket is " << basket_str(normalised_basket(r.spec->basket)) << "\n";
    return 1;
  }
  return scan.problems.empty() ? 0 : 1;
}

int cmd_pfaffians(const Options& o, const Resolved& r, std::ostream& out) {
  FpMatrix M = member_of(r);
  if (!o.out_path.empty()) write_output(member_to_text(r.spec->id, M), o.out_path, out);
  auto Fs = compute_pfaffians(M);
  out << meta_line(r.meta);
  for (int i = 0; i < 5; ++i) out << "F" << i + 1 << ": " << Fs[i].to_string(M.space) << "\n";
  return syzygy_identity_check(M, Fs) ? 0 : 1;
}

int cmd_hilbert(const Options& o, const Resolved& r, std::ostream& out) {
  if (o.terms < 0) throw UsageError("--terms must be non-negative");
  HilbertData h = hilbert_numerator(*r.spec);
  out << "numerator:";
  for (long long c : h.numerator) out << " " << c;
  out << "\nseries:";
  for (long long c : series_expand(h, o.terms)) out << " " << c;
  out << "\n";
  return 0;
}

bool undecided(const Certificate& c) { return c.verdict == verdicts::kInconclusive || c.verdict == "invalid"; }

int cmd_exclude(const Options& o, const Resolved& r, std::ostream& out, std::ostream& err) {
  if (o.centre.empty()) throw UsageError("--centre is required");
  CertifyOptions copt = certify_options(o, r);
  Certificate cert;
  if (o.centre == "curves" || o.centre == "nonsingular points" || o.centre == "smooth") {
    std::string name = o.centre == "curves" ? "curves" : "nonsingular points";
    for (auto& c : certify_family(*r.spec, copt))
      if (c.centre == name) cert = c;
  } else {
    CentreRef ref;
    try {
      ref = parse_centre(*r.spec, o.centre);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    cert = certify_centre(*r.spec, ref, copt);
  }
  write_output(emit_certificates({cert}, r.meta), o.out_path, out);
  if (undecided(cert)) {
    err << cert.family << " " << cert.centre << ": " << cert.verdict << "\n";
    return o.allow_inconclusive ? 0 : 1;
  }
  return 0;
}

int cmd_gencond(const Options& o, const Resolved& r, std::ostream& out) {
  const auto& ids = condition_ids();
  if (std::find(ids.begin(), ids.end(), o.condition) == ids.end())
    throw UsageError("unknown condition '" + o.condition + "'");
  if (r.spec && r.spec->id != condition_family(o.condition))
    throw UsageError("condition " + o.condition + " belongs to " + condition_family(o.condition));
  ConditionReport rep = gencond(o.condition, certify_options(o, r));
  nlohmann::json j = to_json(rep);
  j["prime_source"] = r.meta.prime_source;
  write_output(j.dump(2) + "\n", o.out_path, out);
  return rep.result.pass ? 0 : 1;
}

int cmd_verify_table(const Options& o, const Resolved& r, std::ostream& out, std::ostream& err) {
  CertifyOptions copt = certify_options(o, r);
  std::vector<Certificate> all;
  bool wrong = false, open = false;
  out << meta_line(r.meta);
  for (const auto& spec : family_catalog()) {
    if (r.spec && r.spec->id != spec.id) continue;
    auto certs = certify_family(spec, copt);
    auto issues = table_mismatches(spec, certs);
    int n_wrong = 0, n_open = 0;
    for (const auto& i : issues) (i.inconclusive ? n_open : n_wrong)++;
    out << spec.id << ": " << certs.size() << " certificates, " << n_wrong << " mismatches, " << n_open
        << " inconclusive: " << (issues.empty() ? "OK" : n_wrong ? "MISMATCH" : "INCONCLUSIVE") << "\n";
    for (const auto& i : issues) err << "  " << spec.id << ": " << i.text << "\n";
    wrong |= n_wrong > 0;
    open |= n_open > 0;
    all.insert(all.end(), certs.begin(), certs.end());
  }
  if (!o.out_path.empty()) write_output(emit_certificates(all, r.meta), o.out_path, out);
  if (wrong) return 1;
  return open && !o.allow_inconclusive ? 1 : 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of exclusion computations for Pfaffian Fano 3-folds", "pfano"};
  app.require_subcommand(1);
  Options o;

  auto* catalog = app.add_subcommand("catalog", "List the five families");
  auto* degree = app.add_subcommand("degree", "Anticanonical degree from the Hilbert numerator");
  auto* basket = app.add_subcommand("basket", "Singular points of a sampled or given member");
  auto* pfaffians = app.add_subcommand("pfaffians", "The five Pfaffians of a member; --out writes the member file");
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert numerator and series coefficients");
  auto* exclude = app.add_subcommand("exclude", "Certificate for one centre");
  auto* gencond = app.add_subcommand("gencond", "Evaluate one generality condition");
  auto* verify = app.add_subcommand("verify-table", "Certify every centre of every family and compare with the table");

  for (auto* sub : {degree, basket, pfaffians, hilbert, exclude, verify})
    sub->add_option("family", o.family, "Family id (deg42, deg30, deg20, deg12, deg4)");
  gencond->add_option("condition", o.condition, "Condition id, for example cd:deg42-5")->required();
  for (auto* sub : {basket, pfaffians, exclude, gencond, verify}) {
    sub->add_option("--seed", o.seed, "Sampling seed");
    sub->add_option("--prime", o.prime, "Coefficient field prime (overrides " + std::string(kPrimeEnv) + ")");
    sub->add_option("--budget", o.budget, "Groebner step budget");
    sub->add_option("--member", o.member_path, "Member file replacing the sampled member");
    sub->add_option("--out", o.out_path, "Output path");
  }
  for (auto* sub : {exclude, gencond, verify}) {
    sub->add_option("--negative-control", o.negative_control, "Zero the coefficient named by this condition");
    sub->add_flag("--serial", o.serial, "Run the serial reference path");
  }
  for (auto* sub : {exclude, verify})
    sub->add_flag("--allow-inconclusive", o.allow_inconclusive, "Report inconclusive certificates without failing");
  degree->add_option("--member", o.member_path, "Member file naming the family");
  hilbert->add_option("--member", o.member_path, "Member file naming the family");
  exclude->add_option("--centre", o.centre, "Centre id such as 5/(1,2,3)#1, 1/7, curves");
  hilbert->add_option("--terms", o.terms, "Highest series degree");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (!o.negative_control.empty()) {
      const auto& ids = condition_ids();
      if (std::find(ids.begin(), ids.end(), o.negative_control) == ids.end())
        throw UsageError("unknown condition '" + o.negative_control + "'");
    }
    if (catalog->parsed()) return cmd_catalog(out);
    Resolved r = resolve(o, !gencond->parsed() && !verify->parsed());
    if (degree->parsed()) return cmd_degree(r, out, err);
    if (basket->parsed()) return cmd_basket(r, out, err);
    if (pfaffians->parsed()) return cmd_pfaffians(o, r, out);
    if (hilbert->parsed()) return cmd_hilbert(o, r, out);
    if (exclude->parsed()) return cmd_exclude(o, r, out, err);
    if (gencond->parsed()) return cmd_gencond(o, r, out);
    if (verify->parsed()) return cmd_verify_table(o, r, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const MemberFileError& e) {
    err << "member file: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace pfano
