#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "germforge/error.hpp"
#include "germforge/io.hpp"
#include "germforge/pipeline.hpp"
#include "germforge/puiseux.hpp"
#include "germforge/type_engine.hpp"
#include "germforge/weierstrass.hpp"

using namespace germforge;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::invalid_input, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parse errors are reported with the file name in front of line:column.
template <class F>
auto load(const std::string& path, F parse) {
  std::string text = slurp(path);
  try {
    return parse(text);
  } catch (const Error& e) {
    std::string msg = e.what();
    std::string prefix = std::string(to_string(e.kind())) + " error: ";
    if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
    throw Error(e.kind(), path + ": " + msg);
  }
}

void need_inputs(const JobSpec& job, std::size_t lo, std::size_t hi, const char* usage) {
  if (job.inputs.size() < lo || job.inputs.size() > hi) fail(ErrorKind::invalid_input, std::string("usage: ") + usage);
}

struct Output {
  std::string text;
  Certificate cert;
  int code = 0;
};

Output run_decompose(const JobSpec& job, bool n_given) {
  need_inputs(job, 1, 1, "germforge decompose <r>");
  HermitianForm r = load(job.inputs[0], parse_hermitian);
  int k = n_given ? job.precision : r.precision();
  Decomposition d = decompose(r, k);
  bool ok = reconstruct(d, k) == r.jet(k);
  Output o;
  o.text = print_decomposition(d) + "roundtrip " + (ok ? "exact" : "FAILED") + "\n";
  o.cert.kind = "decompose";
  o.cert.set("level", std::to_string(k));
  o.cert.set("roundtrip", ok ? "exact" : "failed");
  o.cert.add_section("input", print_hermitian(r));
  o.cert.add_section("decomposition", print_decomposition(d));
  o.code = ok ? 0 : 1;
  return o;
}

std::string ratio_text(const TypeRatio& t) {
  return "numerator " + std::string(t.lower_bound() ? ">= " : "") + std::to_string(t.numerator.value) + "\n" +
         "denominator " + std::to_string(t.denominator) + "\n" + "ratio " + (t.lower_bound() ? ">= " : "") +
         to_string(Coef(t.value)) + "\n";
}

Output run_ratio(const JobSpec& job) {
  need_inputs(job, 2, 2, "germforge ratio <r> <curve>");
  HermitianForm r = load(job.inputs[0], parse_hermitian);
  FormalCurve z = load(job.inputs[1], parse_curve);
  TypeRatio t = dangelo_ratio(r, z);
  Output o;
  o.text = ratio_text(t);
  o.cert.kind = "ratio";
  o.cert.set("ratio", to_string(Coef(t.value)) + (t.lower_bound() ? " lower_bound" : ""));
  o.cert.add_section("input", print_hermitian(r));
  o.cert.add_section("curve", print_curve(z));
  return o;
}

Output run_witness(const JobSpec& job) {
  need_inputs(job, 1, 2, "germforge witness <certificate> | germforge witness <r> <curve> --N k");
  Output o;
  WitnessResult w;
  if (job.inputs.size() == 1) {
    Certificate c = load(job.inputs[0], parse_certificate);
    w = recheck_certificate(c);
    o.cert = c;
  } else {
    HermitianForm r = load(job.inputs[0], parse_hermitian);
    FormalCurve z = load(job.inputs[1], parse_curve);
    w = witness_check(r, z, job.precision);
    o.cert.kind = "witness";
    o.cert.set("order", std::to_string(job.precision));
    o.cert.add_section("input", print_hermitian(r));
    o.cert.add_section("curve", print_curve(z));
  }
  if (w.certified) {
    o.text = "certified order " + std::to_string(w.order_verified) + "\n";
    o.cert.set("status", "certified");
  } else {
    o.text = "not certified: first term " + to_string(w.coefficient) + " t^" + std::to_string(w.monomial[0]) +
             " tbar^" + std::to_string(w.monomial[1]) + " at degree " + std::to_string(w.first_degree) + "\n";
    o.cert.set("status", "violated");
    o.cert.set("first_degree", std::to_string(w.first_degree));
    o.code = 2;
  }
  return o;
}

Output run_search(const JobSpec& job) {
  need_inputs(job, 1, 1, "germforge search <r> [--A a] [--d d]");
  HermitianForm r = load(job.inputs[0], parse_hermitian);
  SearchOptions so;
  so.precision = job.precision;
  auto hits = monomial_curve_search(r, job.max_exponent, job.coeff_degree, so);
  Output o;
  o.cert.kind = "search";
  o.cert.add_section("input", print_hermitian(r));
  for (std::size_t i = 0; i < hits.size() && i < 5; ++i) {
    std::string block = "exponents";
    for (int a : hits[i].exponents) block += " " + std::to_string(a);
    block += "\n" + ratio_text(hits[i].ratio) + print_curve(hits[i].curve);
    o.text += block + "\n";
    o.cert.add_section("hit", block);
  }
  if (!hits.empty()) {
    o.cert.set("best_ratio", to_string(Coef(hits.front().ratio.value)) +
                                 (hits.front().ratio.lower_bound() ? " lower_bound" : ""));
  }
  return o;
}

Output run_codim(const JobSpec& job) {
  need_inputs(job, 1, 1, "germforge codim <ideal> [--bound B]");
  IdealPresentation ideal = load(job.inputs[0], parse_ideal);
  CodimReport rep = codimension(ideal, job.bound);
  Output o;
  o.text = print_codim(rep, ideal.nvars());
  o.cert.kind = "codim";
  o.cert.set("verdict", rep.finite ? "finite" : "unresolved");
  o.cert.add_section("ideal", print_ideal(ideal));
  o.cert.add_section("report", o.text);
  return o;
}

Output run_puiseux(const JobSpec& job) {
  need_inputs(job, 1, 1, "germforge puiseux <series> [--N k] [--exact-only]");
  TruncSeries f = load(job.inputs[0], parse_series);
  WeierstrassPoly p = weierstrass_prepare(f, -1).poly;
  std::vector<long> direction;
  if (p.base_vars() != 1) {
    Restriction res = generic_restrict(p);
    direction = res.direction;
    p = res.poly;
  }
  PuiseuxResult pr = newton_puiseux(p, job.precision, job.exact_only);
  Output o;
  o.cert.kind = "puiseux";
  o.cert.add_section("input", print_series(f));
  int total = 0;
  for (const auto& b : pr.branches) {
    o.text += print_branch(b) + "\n";
    o.cert.add_section("branch", print_branch(b));
    total += b.multiplicity * b.ramification;
  }
  o.text += "degree " + std::to_string(p.degree()) + " covered " + std::to_string(total) + " skipped " +
            std::to_string(pr.skipped_roots) + "\n";
  if (!direction.empty()) {
    o.text += "direction";
    for (long v : direction) o.text += " " + std::to_string(v);
    o.text += "\n";
  }
  return o;
}

Output run_lift(const JobSpec& job) {
  need_inputs(job, 1, 2, "germforge lift <ideal> [<f>] [--N k] [--maxnu v]");
  IdealPresentation ideal = load(job.inputs[0], parse_ideal);
  if (!ideal.normal_form()) fail(ErrorKind::invalid_input, "lift needs an ideal with a normal_form block");
  const NormalForm& nf = *ideal.normal_form();
  LiftResult lr = lift_normal_form(nf, job.precision, job.exact_only);
  Output o;
  o.text = print_curve(lr.curve) + "certified " + (lr.certified.lower_bound ? ">= " : "") +
           std::to_string(lr.certified.value) + "\n";
  o.cert.kind = "lift";
  o.cert.add_section("ideal", print_ideal(ideal));
  o.cert.add_section("curve", print_curve(lr.curve));
  o.cert.set("certified_order", std::to_string(lr.certified.value));
  if (job.inputs.size() == 2) {
    TruncSeries f = load(job.inputs[1], parse_series);
    auto am = associated_membership(f, nf, job.maxnu, std::min(job.precision, 12));
    if (am) {
      o.text += "associated_membership nu " + std::to_string(am->nu) + "\n";
      o.cert.set("nu", std::to_string(am->nu));
    } else {
      o.text += "associated_membership none up to nu " + std::to_string(job.maxnu) + "\n";
      o.code = 2;
    }
  }
  return o;
}

Output run_pipeline_job(const JobSpec& job) {
  need_inputs(job, 1, 1, "germforge pipeline <r> [--unitary U] [--ideal I]");
  HermitianForm r = load(job.inputs[0], parse_hermitian);
  PipelineOptions opt;
  opt.precision = job.precision;
  opt.max_exponent = job.max_exponent;
  opt.coeff_degree = job.coeff_degree;
  opt.bound = job.bound;
  opt.exact_only = job.exact_only;
  if (job.unitary_path) opt.unitary = load(*job.unitary_path, parse_unitary);
  if (job.ideal_path) opt.ideal = load(*job.ideal_path, parse_ideal);
  PipelineResult res = run_pipeline(r, opt);
  Output o;
  o.cert = res.bundle;
  o.code = res.exit_code;
  if (res.exit_code == 0) {
    o.text = "certified order " + std::to_string(job.precision) + "\n" + print_curve(*res.curve);
  } else if (res.exit_code == 2) {
    o.text = "no witness found at these bounds\n";
    if (res.best_ratio) {
      o.text += "best ratio " + to_string(Coef(res.best_ratio->value)) + " (lower bound for the type)\n";
    }
  } else {
    o.text = "error [" + res.stage + "]: " + res.message + "\n";
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"germforge: formal power series tools for hypersurface germs"};
  std::string command;
  JobSpec job;
  app.add_option("command", command, "decompose|ratio|witness|search|codim|puiseux|lift|pipeline")->required();
  app.add_option("inputs", job.inputs, "input files");
  auto* n_opt = app.add_option("--N", job.precision, "precision or order");
  app.add_option("--A", job.max_exponent, "largest search exponent");
  app.add_option("--d", job.coeff_degree, "search coefficient degree");
  app.add_option("--bound", job.bound, "codimension bound");
  app.add_option("--maxnu", job.maxnu, "largest power of D tried");
  app.add_flag("--exact-only", job.exact_only, "drop non-rational Puiseux roots");
  app.add_option("--emit-certificate", job.certificate, "write a certificate file");
  app.add_option("--unitary", job.unitary_path, "unitary block for the pipeline");
  app.add_option("--ideal", job.ideal_path, "ideal with normal form for the pipeline");
  app.add_option("-o,--output", job.output, "write the report here instead of stdout");
  CLI11_PARSE(app, argc, argv);

  try {
    auto cmd = command_from_string(command);
    if (!cmd) fail(ErrorKind::invalid_input, "unknown command '" + command + "'");
    job.command = *cmd;
    job.validate();
    Output o;
    switch (job.command) {
      case Command::decompose: o = run_decompose(job, n_opt->count() > 0); break;
      case Command::ratio: o = run_ratio(job); break;
      case Command::witness: o = run_witness(job); break;
      case Command::search: o = run_search(job); break;
      case Command::codim: o = run_codim(job); break;
      case Command::puiseux: o = run_puiseux(job); break;
      case Command::lift: o = run_lift(job); break;
      case Command::pipeline: o = run_pipeline_job(job); break;
    }
    if (job.output) {
      std::ofstream(*job.output) << o.text;
    } else {
      std::cout << o.text;
    }
    if (job.certificate) {
      std::ofstream out(*job.certificate);
      if (!out) fail(ErrorKind::invalid_input, "cannot write " + *job.certificate);
      out << print_certificate(o.cert);
    }
    return o.code;
  } catch (const Error& e) {
    std::cerr << "error [" << command << "]: " << e.what() << "\n";
    return 1;
  }
}
