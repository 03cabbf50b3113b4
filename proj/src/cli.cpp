#include "kzb/cli.hpp"
#include "kzb/suite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace kzb
{

  namespace
  {
    using nlohmann::ordered_json;

    std::vector<std::string> split(const std::string & s, char sep)
    {
      std::vector<std::string> parts;
      if (s.empty())
        return parts;
      std::stringstream in(s);
      std::string item;
      while (std::getline(in, item, sep))
        parts.push_back(item);
      if (s.back() == sep)
        parts.emplace_back();
      return parts;
    }

    std::string fmt(double x)
    {
      std::ostringstream o;
      o << std::setprecision(17) << x;
      return o.str();
    }

    std::string describe_json(int p, int r)
    {
      const RealFormData data = build_real_form(p, r);
      ordered_json doc;
      doc["p"] = p;
      doc["r"] = r;
      doc["root_system"] = p > r ? "BC" + std::to_string(r) : "C" + std::to_string(r);
      if (p == r)
        doc["note"] = "p = r: the roots f_k have multiplicity 2(p-r) = 0 and are omitted, leaving type C_" +
                      std::to_string(r);
      ordered_json dims;
      dims["g"] = data.dim();
      dims["k"] = data.dim_k();
      dims["m"] = data.mBasis.size();
      dims["q"] = data.qBasis.size();
      dims["a"] = data.r;
      doc["dims"] = dims;
      ordered_json roots = ordered_json::array();
      for (const auto & rr : data.restrictedRoots)
        if (rr.positive)
          roots.push_back({{"root", weight_label(rr.lambda)}, {"lambda", rr.lambda}, {"mtp", rr.mtp}});
      doc["positive_restricted_roots"] = roots;
      doc["rho"] = data.rho;
      doc["t_rho_norm_sq"] = data.tRhoNormSq;
      ordered_json table = ordered_json::array();
      for (const auto & al : data.roots)
        table.push_back({{"i", al.i + 1},
                         {"j", al.j + 1},
                         {"restriction", al.imaginary ? std::string("0") : weight_label(al.weight)},
                         {"c_re", al.c.real()},
                         {"c_im", al.c.imag()}});
      doc["c_alpha"] = table;
      return doc.dump(2) + "\n";
    }

    std::string check_csv(const std::vector<CheckResult> & results)
    {
      std::ostringstream o;
      o << "name,max_err,tol,status\n";
      for (const auto & c : results)
        o << c.name << ',' << fmt(c.maxErr) << ',' << fmt(c.tol) << ',' << c.status() << '\n';
      return o.str();
    }

    struct PotentialConfig
    {
      std::vector<double> ray;
      double tMin = 0.1;
      double tMax = 3.0;
      int samples = 30;
    };

    /// Rows of t and sorted eigenvalues of V restricted to the m-invariants
    std::string potential_table(const SuiteConfig & config, const PotentialConfig & pc, bool json)
    {
      const RealFormData data = build_real_form(config.p, config.r);
      std::vector<double> h = pc.ray;
      if (h.empty()) {
        h.assign(static_cast<size_t>(data.r), 0.0);
        h[0] = 1.0;
      }
      if (static_cast<int>(h.size()) != data.r)
        throw KzbError("invalid-config", "ray needs " + std::to_string(data.r) + " coordinates");
      if (pc.samples < 1)
        throw KzbError("invalid-config", "samples must be positive");
      const KzbSpace S = make_space(data, Menu{config.sigmaL, resolved_reps(config), config.sigmaR});
      const InvariantSubspace & inv = S.invariants();
      if (inv.dim() == 0)
        throw KzbError("invalid-config", "the invariant subspace is zero for this choice of representations");

      ordered_json rows = ordered_json::array();
      std::ostringstream csv;
      csv << 't';
      for (Eigen::Index k = 0; k < inv.dim(); ++k)
        csv << ",ev" << k;
      csv << ",status\n";
      for (int s = 0; s < pc.samples; ++s) {
        const double t = pc.samples == 1 ? pc.tMin : pc.tMin + (pc.tMax - pc.tMin) * s / (pc.samples - 1);
        BasePoint a;
        for (double c : h)
          a.coords.push_back(t * c);
        a.margin = 1e-6;
        std::vector<double> ev;
        std::string status = "ok";
        if (!is_regular(data, a)) {
          status = "wall";
        } else {
          const CMatrix V = inv.basis.adjoint() * build_potential(S, a).value * inv.basis;
          Eigen::ComplexEigenSolver<CMatrix> solver(V, false);
          const double scale = 1.0 + max_abs(V);
          for (Eigen::Index k = 0; k < V.rows(); ++k) {
            const cd e = solver.eigenvalues()(k);
            if (std::abs(e.imag()) > 1e-9 * scale)
              status = "complex";
            ev.push_back(e.real());
          }
          std::sort(ev.begin(), ev.end());
        }
        csv << fmt(t);
        for (Eigen::Index k = 0; k < inv.dim(); ++k)
          csv << ',' << (ev.empty() ? std::string("nan") : fmt(ev[static_cast<size_t>(k)]));
        csv << ',' << status << '\n';
        ordered_json row;
        row["t"] = t;
        row["eigenvalues"] = ev;
        row["status"] = status;
        rows.push_back(row);
      }
      if (!json)
        return csv.str();
      ordered_json doc;
      doc["p"] = config.p;
      doc["r"] = config.r;
      doc["ray"] = h;
      doc["invariant_dim"] = inv.dim();
      doc["rows"] = rows;
      return doc.dump(2) + "\n";
    }

    void emit(const std::string & text, const std::string & path, std::ostream & out)
    {
      if (path.empty()) {
        out << text;
        return;
      }
      std::ofstream file(path, std::ios::binary);
      if (!file)
        throw KzbError("invalid-config", "cannot open '" + path + "' for writing");
      file << text;
    }
  } // namespace

  int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
  {
    CLI::App app{"Boundary KZB operators and spin Calogero-Moser Hamiltonians for su(p,r)", "kzb"};
    app.require_subcommand(1);

    int p = 2, r = 1, n = 3, points = 3;
    std::string reps, sigmaL = "def", sigmaR = "def", out_path, format, groups;
    std::uint64_t seed = 42;
    double tol = 0.0;
    PotentialConfig pc;
    std::string ray;

    auto * describe = app.add_subcommand("describe", "restricted roots, dimensions and c_alpha table");
    describe->add_option("--p", p)->required();
    describe->add_option("--r", r)->required();
    describe->add_option("--out", out_path);

    auto * check = app.add_subcommand("check", "run the verification suite and write a report");
    CLI::Option * tolOpt = nullptr;
    CLI::Option * groupsOpt = nullptr;
    for (auto * sub : {check, app.add_subcommand("potential", "eigenvalues of the potential along a ray")}) {
      sub->add_option("--p", p);
      sub->add_option("--r", r);
      sub->add_option("--n", n);
      sub->add_option("--reps", reps, "comma list of labels: def, dual, adj, triv, products joined by '*'");
      sub->add_option("--sigma-l", sigmaL);
      sub->add_option("--sigma-r", sigmaR);
      sub->add_option("--out", out_path);
      sub->add_option("--format", format, "json for check, csv for potential by default")->check(CLI::IsMember({"json", "csv"}));
    }
    auto * potential = app.get_subcommand("potential");
    check->add_option("--seed", seed);
    check->add_option("--points", points);
    tolOpt = check->add_option("--tol", tol, "override every pinned tolerance");
    groupsOpt = check->add_option("--groups", groups, "comma list of check groups; empty selects none");
    potential->add_option("--ray", ray, "coordinates of h over x_1..x_r");
    potential->add_option("--t-min", pc.tMin);
    potential->add_option("--t-max", pc.tMax);
    potential->add_option("--samples", pc.samples);

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp & e) {
      out << app.help();
      return ExitPass;
    } catch (const CLI::ParseError & e) {
      err << "error: " << e.what() << "\n";
      return ExitUsage;
    }

    try {
      if (describe->parsed()) {
        emit(describe_json(p, r), out_path, out);
        return ExitPass;
      }

      SuiteConfig config;
      config.p = p;
      config.r = r;
      config.n = n;
      config.reps = split(reps, ',');
      config.sigmaL = sigmaL;
      config.sigmaR = sigmaR;

      if (potential->parsed()) {
        if (!potential->count("--n"))
          config.n = 0;
        if (!potential->count("--sigma-l"))
          config.sigmaL = "triv";
        if (!potential->count("--sigma-r"))
          config.sigmaR = "triv";
        config.groups.clear();
        validate(config);
        for (const auto & c : split(ray, ','))
          pc.ray.push_back(std::stod(c));
        emit(potential_table(config, pc, format == "json"), out_path, out);
        return ExitPass;
      }

      config.seed = seed;
      if (const char * env = std::getenv("KZB_SEED")) {
        char * end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*env == '\0' || *end != '\0')
          throw KzbError("invalid-config", std::string("KZB_SEED is not an unsigned integer: '") + env + "'");
        config.seed = v;
      }
      config.points = points;
      if (tolOpt->count())
        config.tol = tol;
      if (groupsOpt->count())
        config.groups = split(groups, ',');
      const auto results = run_suite(config);
      emit(format == "csv" ? check_csv(results) : report_json(config, results), out_path, out);
      for (const auto & c : results)
        if (!c.pass)
          err << "FAIL " << c.name << ": max_err " << fmt(c.maxErr) << " tol " << fmt(c.tol) << "\n";
      return all_passed(results) ? ExitPass : ExitCheckFailure;
    } catch (const KzbError & e) {
      err << "error: " << e.what() << "\n";
      return ExitUsage;
    } catch (const std::invalid_argument & e) {
      err << "error: invalid number: " << e.what() << "\n";
      return ExitUsage;
    }
  }

} // namespace kzb
