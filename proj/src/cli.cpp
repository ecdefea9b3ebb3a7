#include "branegauge/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "branegauge/cech.hpp"
#include "branegauge/complexes.hpp"
#include "branegauge/ext.hpp"
#include "branegauge/gauge.hpp"
#include "branegauge/io.hpp"

namespace branegauge {

namespace {

struct LoadedDocument {
  BraneComplex brane;
  std::string digest;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Error::Kind::InvalidInput, "cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

LoadedDocument load_document(const std::string& path) {
  std::string bytes = read_input(path);
  LoadedDocument doc;
  doc.digest = input_digest(bytes);
  doc.brane = parse_brane(bytes);
  return doc;
}

long long dim_at(const std::map<int, long long>& dims, int k) {
  auto it = dims.find(k);
  return it == dims.end() ? 0 : it->second;
}

void emit(std::ostream& out, const Json& report) { out << report.dump(2) << "\n"; }

struct CommonFlags {
  bool json = false;
  std::optional<int> truncation;
};

void attach_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_flag("--json", flags.json, "emit a JSON report");
  cmd->add_option("--truncation", flags.truncation,
                  "exponent cutoff for the covering model (>= computed bound)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"exact engine for line-bundle brane complexes on P^n"};
  app.require_subcommand(1);

  // validate
  std::string validate_path;
  CommonFlags validate_flags;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "check a brane document");
  validate_cmd->add_option("file", validate_path, "document path or -")
      ->required();
  attach_common(validate_cmd, validate_flags);

  // cohom
  std::string cohom_path;
  CommonFlags cohom_flags;
  CLI::App* cohom_cmd =
      app.add_subcommand("cohom", "hypercohomology dimensions of a document");
  cohom_cmd->add_option("file", cohom_path, "document path or -")->required();
  attach_common(cohom_cmd, cohom_flags);

  // ext
  std::string ext_path_a, ext_path_b;
  std::optional<int> ext_degree;
  CommonFlags ext_flags;
  CLI::App* ext_cmd =
      app.add_subcommand("ext", "derived morphism dimensions between two documents");
  ext_cmd->add_option("source", ext_path_a, "source document path")->required();
  ext_cmd->add_option("target", ext_path_b, "target document path")->required();
  ext_cmd->add_option("--i", ext_degree, "single degree to report");
  attach_common(ext_cmd, ext_flags);

  // omega
  int omega_p = 1, omega_k = 0, omega_n = 2;
  CommonFlags omega_flags;
  CLI::App* omega_cmd = app.add_subcommand(
      "omega", "cohomology of twisted p-forms via the replacement complex");
  omega_cmd->add_option("--p", omega_p, "form degree")->required();
  omega_cmd->add_option("--k", omega_k, "twist")->required();
  omega_cmd->add_option("--n", omega_n, "projective dimension")->required();
  attach_common(omega_cmd, omega_flags);

  // gauge
  std::string gauge_path, gauge_witness_path;
  CommonFlags gauge_flags;
  CLI::App* gauge_cmd =
      app.add_subcommand("gauge", "decide existence of a holomorphic gauge field");
  gauge_cmd->add_option("file", gauge_path, "document path or -")->required();
  gauge_cmd->add_option("--witness", gauge_witness_path,
                        "write the correcting primitive to this path");
  attach_common(gauge_cmd, gauge_flags);

  // classify
  std::string classify_path;
  CommonFlags classify_flags;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "compare the twist-based expectation with the engine");
  classify_cmd->add_option("file", classify_path, "document path or -")
      ->required();
  attach_common(classify_cmd, classify_flags);

  // audit
  std::string audit_path;
  CommonFlags audit_flags;
  CLI::App* audit_cmd = app.add_subcommand(
      "audit", "derived vs global-section morphism count into the one-form twist");
  audit_cmd->add_option("file", audit_path, "document path or -")->required();
  attach_common(audit_cmd, audit_flags);

  // generate
  int gen_depth = 1, gen_n = 2;
  unsigned long long gen_seed = 0;
  CommonFlags gen_flags;
  CLI::App* gen_cmd = app.add_subcommand(
      "generate", "pseudo-random brane from the standard generators");
  gen_cmd->add_option("--depth", gen_depth, "number of cone stages")->required();
  gen_cmd->add_option("--seed", gen_seed, "random seed")->required();
  gen_cmd->add_option("--n", gen_n, "projective dimension")->required();
  attach_common(gen_cmd, gen_flags);

  // bott
  int bott_p = 0, bott_k = 0, bott_q = 0, bott_n = 2;
  CommonFlags bott_flags;
  CLI::App* bott_cmd =
      app.add_subcommand("bott", "closed-form dimension of H^q of twisted p-forms");
  bott_cmd->add_option("--p", bott_p, "form degree")->required();
  bott_cmd->add_option("--k", bott_k, "twist")->required();
  bott_cmd->add_option("--q", bott_q, "cohomological degree")->required();
  bott_cmd->add_option("--n", bott_n, "projective dimension")->required();
  attach_common(bott_cmd, bott_flags);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (validate_cmd->parsed()) {
      LoadedDocument doc = load_document(validate_path);
      bool in_range = true, all_zero = true;
      for (const Term& t : doc.brane.terms) {
        for (int k : t.twists) {
          if (k != 0) all_zero = false;
          if (k < -doc.brane.n || k > 0) in_range = false;
        }
      }
      if (validate_flags.json) {
        Json report;
        report["command"] = "validate";
        report["input_digest"] = doc.digest;
        report["valid"] = true;
        report["in_range"] = in_range;
        report["all_twists_zero"] = all_zero;
        emit(out, report);
      } else {
        out << "valid";
        if (in_range) out << ", in-range";
        if (all_zero) out << ", all twists 0";
        out << "\n";
      }
      return 0;
    }

    if (cohom_cmd->parsed()) {
      LoadedDocument doc = load_document(cohom_path);
      TotalOptions opts;
      opts.truncation = cohom_flags.truncation;
      CohomologyResult res = hypercohomology(doc.brane, opts);
      if (cohom_flags.json) {
        Json report;
        report["command"] = "cohom";
        report["input_digest"] = doc.digest;
        report["dims"] = json_of_dims(res.dims);
        report["truncation_used"] = res.truncation;
        emit(out, report);
      } else {
        for (const auto& [k, d] : res.dims)
          out << "H^" << k << ": " << d << "\n";
        out << "truncation: " << res.truncation << "\n";
      }
      return 0;
    }

    if (ext_cmd->parsed()) {
      LoadedDocument a = load_document(ext_path_a);
      LoadedDocument b = load_document(ext_path_b);
      if (a.brane.n != b.brane.n)
        throw Error(Error::Kind::InvalidInput,
                    "documents live over different projective spaces");
      HomComplexData hom = hom_complex(a.brane, b.brane);
      TotalOptions opts;
      opts.truncation = ext_flags.truncation;
      if (ext_degree) opts.degrees = std::make_pair(*ext_degree, *ext_degree);
      CohomologyResult res = hypercohomology(hom.cx, opts);
      if (ext_flags.json) {
        Json report;
        report["command"] = "ext";
        report["input_digest"] = input_digest(a.digest + b.digest);
        if (ext_degree)
          report["dim"] = dim_at(res.dims, *ext_degree);
        else
          report["dims"] = json_of_dims(res.dims);
        report["truncation_used"] = res.truncation;
        emit(out, report);
      } else if (ext_degree) {
        out << "dim: " << dim_at(res.dims, *ext_degree) << "\n";
      } else {
        for (const auto& [k, d] : res.dims)
          out << "ext^" << k << ": " << d << "\n";
        out << "truncation: " << res.truncation << "\n";
      }
      return 0;
    }

    if (omega_cmd->parsed()) {
      if (omega_n < 1)
        throw Error(Error::Kind::InvalidInput, "--n must be at least 1");
      OmegaReplacementData rep =
          omega_replacement(line_bundle(omega_n, omega_k), omega_p);
      TotalOptions opts;
      opts.truncation = omega_flags.truncation;
      CohomologyResult res = hypercohomology(rep.cx, opts);
      std::map<int, long long> dims;
      for (int q = 0; q <= omega_n; ++q) dims[q] = dim_at(res.dims, q);
      if (omega_flags.json) {
        Json report;
        report["command"] = "omega";
        report["p"] = omega_p;
        report["k"] = omega_k;
        report["n"] = omega_n;
        report["dims"] = json_of_dims(dims);
        report["truncation_used"] = res.truncation;
        emit(out, report);
      } else {
        for (const auto& [q, d] : dims)
          out << "H^" << q << "(Omega^" << omega_p << "(" << omega_k
              << ")): " << d << "\n";
        out << "truncation: " << res.truncation << "\n";
      }
      return 0;
    }

    if (gauge_cmd->parsed()) {
      LoadedDocument doc = load_document(gauge_path);
      GaugeOptions gopts;
      gopts.want_witness = !gauge_witness_path.empty();
      gopts.truncation = gauge_flags.truncation;
      GaugeDecision d = gauge_exists(doc.brane, gopts);
      if (!gauge_witness_path.empty()) {
        Json wj;
        wj["exists"] = d.exists;
        if (d.witness)
          wj["correction"] = json_of(*d.witness)["correction"];
        else
          wj["correction"] = nullptr;
        std::ofstream wout(gauge_witness_path, std::ios::binary);
        if (!wout)
          throw Error(Error::Kind::InvalidInput,
                      "cannot write witness file: " + gauge_witness_path);
        wout << wj.dump(2) << "\n";
      }
      if (gauge_flags.json) {
        Json report;
        report["command"] = "gauge";
        report["input_digest"] = doc.digest;
        report["decision"] = json_of(d);
        if (!gauge_witness_path.empty())
          report["witness_path"] = gauge_witness_path;
        report["truncation_used"] = d.truncation;
        emit(out, report);
      } else {
        out << "exists: " << (d.exists ? "true" : "false") << "\n";
        out << "space_dim: " << d.space_dim << "\n";
        if (!gauge_witness_path.empty() && d.exists)
          out << "witness: " << gauge_witness_path << "\n";
      }
      return 0;
    }

    if (classify_cmd->parsed()) {
      LoadedDocument doc = load_document(classify_path);
      Classification c = classify_brane(doc.brane, classify_flags.truncation);
      if (classify_flags.json) {
        Json report;
        report["command"] = "classify";
        report["input_digest"] = doc.digest;
        report["classification"] = json_of(c);
        report["truncation_used"] = c.truncation;
        emit(out, report);
      } else {
        out << "predicted: " << to_string(c.predicted) << "\n";
        out << "engine: " << (c.engine_exists ? "exists" : "not-exists")
            << "\n";
        out << "agree: " << (c.agree ? (*c.agree ? "yes" : "no") : "n/a")
            << "\n";
        for (const auto& [p, v] : c.chern)
          out << "chern[" << p << "]: " << v << "\n";
      }
      return 0;
    }

    if (audit_cmd->parsed()) {
      LoadedDocument doc = load_document(audit_path);
      ExtAuditReport r = gauge_hom_audit(doc.brane, audit_flags.truncation);
      if (audit_flags.json) {
        Json report;
        report["command"] = "audit";
        report["input_digest"] = doc.digest;
        report["audit"] = json_of(r);
        report["truncation_used"] = r.truncation;
        emit(out, report);
      } else {
        out << "source: " << r.source << "\n";
        out << "target: " << r.target << "\n";
        for (const auto& [k, v] : r.ext) out << "ext^" << k << ": " << v << "\n";
        out << "naive_hom0: " << r.naive_hom0 << "\n";
        out << "discrepancy: " << (r.discrepancy ? "yes" : "no") << "\n";
        for (const TwistLine& line : r.twist_lines)
          out << "twist " << line.difference << ": pairs=" << line.pairs
              << " sections=" << line.sections << "\n";
      }
      return 0;
    }

    if (gen_cmd->parsed()) {
      if (gen_n < 1)
        throw Error(Error::Kind::InvalidInput, "--n must be at least 1");
      if (gen_depth < 0 || gen_depth > 8)
        throw Error(Error::Kind::InvalidInput, "--depth must lie in [0, 8]");
      BraneComplex brane = random_brane(gen_n, gen_depth, gen_seed);
      std::string body = serialize_brane(brane);
      if (gen_flags.json) {
        Json report;
        report["command"] = "generate";
        report["seed"] = gen_seed;
        report["depth"] = gen_depth;
        report["n"] = gen_n;
        report["document"] = brane_to_json(brane);
        report["digest"] = input_digest(body);
        emit(out, report);
      } else {
        out << body;
      }
      return 0;
    }

    if (bott_cmd->parsed()) {
      if (bott_n < 1)
        throw Error(Error::Kind::InvalidInput, "--n must be at least 1");
      long long d = bott_dim(bott_n, bott_p, bott_k, bott_q);
      if (bott_flags.json) {
        Json report;
        report["command"] = "bott";
        report["p"] = bott_p;
        report["k"] = bott_k;
        report["q"] = bott_q;
        report["n"] = bott_n;
        report["dim"] = d;
        emit(out, report);
      } else {
        out << "dim: " << d << "\n";
      }
      return 0;
    }

    err << "no subcommand selected\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == Error::Kind::InvalidInput ? 1 : 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace branegauge
