#include "gaugestrata/commands.hpp"

#include "gaugestrata/errors.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace gaugestrata::commands {

namespace {

constexpr std::array<std::string_view, 7> kNames = {
    "classify", "sigma", "resolvent", "scan", "qc-check", "splittings", "symmetries"};

/// key: value lines with 12 significant digits.
class Report {
public:
  explicit Report(std::ostream& os) : m_os(os) { m_os << std::setprecision(12); }

  template <class T>
  Report& kv(std::string_view key, const T& value)
  {
    m_os << key << ": " << value << '\n';
    return *this;
  }

  Report& flag(std::string_view key, bool value) { return kv(key, value ? "true" : "false"); }

private:
  std::ostream& m_os;
};

std::string join(const Eigen::VectorXd& v)
{
  std::ostringstream os;
  os << std::setprecision(12);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    os << (i ? " " : "") << v(i);
  }
  return os.str();
}

std::string field_label(const RunConfig& cfg)
{
  if (!cfg.field) {
    return "none";
  }
  if (!cfg.field->ansatz) {
    return "matrix";
  }
  std::ostringstream os;
  os << std::setprecision(12) << to_string(*cfg.field->ansatz) << '(';
  for (std::size_t i = 0; i < cfg.field->params.size(); ++i) {
    os << (i ? "," : "") << cfg.field->params[i];
  }
  os << ')';
  return os.str();
}

std::uint64_t effective_seed(const RunConfig& cfg, const RunFlags& flags)
{
  if (flags.seed) {
    return *flags.seed;
  }
  return cfg.lattice ? cfg.lattice->seed : 1;
}

void header(Report& r, std::string_view command, const RunConfig& cfg)
{
  r.kv("command", command).kv("schema_version", cfg.schema_version).kv("group", to_string(cfg.group));
}

int run_classify(const RunConfig& cfg, const RunFlags& flags, std::ostream& out)
{
  const ConstantField field = config::build_field(cfg);
  const HolonomyMode mode = flags.mode.value_or(cfg.mode);
  const StratumReport s = strata::classify(field, mode);
  Report r(out);
  header(r, "classify", cfg);
  r.kv("formula", "isotropy algebra = centralizer of the holonomy algebra; curvature "
                  "B_i = -(g/2) eps_ijk [A_j, A_k]");
  r.kv("field", field_label(cfg))
      .kv("mode", to_string(mode))
      .kv("holonomy_dim", s.holonomy_dim)
      .kv("isotropy_dim", s.isotropy_dim)
      .kv("stratum_index", s.stratum_index)
      .kv("isotropy", s.isotropy_label)
      .kv("subbundle", s.subbundle_label);
  return kExitOk;
}

void sigma_lines(Report& r, std::string_view prefix, const SigmaResult& s)
{
  const std::string p(prefix);
  r.kv(p + "sigma", s.sigma).flag(p + "divergent", s.divergent).kv(p + "log_psi0", s.log_psi0);
  if (s.method == SigmaMethod::Quadrature) {
    r.kv(p + "error_estimate", s.error_estimate).kv(p + "evaluations", s.evaluations);
  }
}

int run_sigma(const RunConfig& cfg, const RunFlags& flags, std::ostream& out)
{
  const ConstantField field = config::build_field(cfg);
  QuadratureConfig quad = cfg.quadrature();
  if (flags.tol) {
    quad.rel_tol = *flags.tol;
  }
  Report r(out);
  header(r, "sigma", cfg);
  r.kv("formula", "sigma = B.(R.R)^(-1/2).B / g, psi0 = exp(-(V g / 2) sigma)");
  r.kv("field", field_label(cfg)).kv("coupling", cfg.coupling).kv("volume", cfg.volume);
  r.kv("method", cfg.sigma_method);
  if (cfg.sigma_method == "spectral" || cfg.sigma_method == "both") {
    const SigmaResult s = groundstate::sigma_spectral(field, cfg.kernel_tolerance());
    sigma_lines(r, "", s);
    r.kv("eigenvalues_RR", join(s.eigenvalues));
    if (cfg.sigma_method == "both") {
      const SigmaResult q = groundstate::sigma_quadrature(field, quad);
      sigma_lines(r, "quadrature_", q);
      const double rel = s.divergent || q.divergent
                             ? 0.0
                             : std::abs(s.sigma - q.sigma) / std::max(std::abs(s.sigma), 1e-300);
      r.kv("relative_difference", rel).flag("divergence_flags_agree", s.divergent == q.divergent);
    }
  } else {
    const SigmaResult q = groundstate::sigma_quadrature(field, quad);
    sigma_lines(r, "", q);
  }
  return kExitOk;
}

std::optional<std::pair<ClosedFormCase, std::vector<double>>> closed_form_for(const RunConfig& cfg)
{
  if (!cfg.field || !cfg.field->ansatz) {
    return std::nullopt;
  }
  const auto& p = cfg.field->params;
  switch (*cfg.field->ansatz) {
    case Ansatz::SU2_DIAG: return {{ClosedFormCase::SU2_DIAG, p}};
    case Ansatz::SU3_II: return {{ClosedFormCase::SU3_II, {p[0], p[1]}}};
    case Ansatz::SU3_III: return {{ClosedFormCase::SU3_III, p}};
    case Ansatz::SU3_IV: return {{ClosedFormCase::SU3_IV, p}};
    case Ansatz::SU3_I: return std::nullopt;
  }
  return std::nullopt;
}

int run_resolvent(const RunConfig& cfg, const RunFlags&, std::ostream& out)
{
  if (!cfg.lambda) {
    throw ConfigError("resolvent.lambda: this command needs a resolvent section with lambda");
  }
  ConstantField field = config::build_field(cfg);
  if (cfg.coupling != 1.0) {
    throw ConfigError("coupling: the resolvent comparison is defined at coupling 1");
  }
  const double value = groundstate::resolvent_form(field, *cfg.lambda, cfg.kernel_tolerance());
  Report r(out);
  header(r, "resolvent", cfg);
  r.kv("formula", "B^T (lambda + R.R)^(-1) B at g = 1");
  r.kv("field", field_label(cfg)).kv("lambda", *cfg.lambda).kv("resolvent", value);
  if (const auto cf = closed_form_for(cfg)) {
    const double printed = closed_form(cf->first, cf->second, *cfg.lambda);
    const double kappa = printed_normalization(cf->first);
    r.kv("closed_form_case", to_string(cf->first))
        .kv("closed_form", printed)
        .kv("printed_normalization", kappa)
        .kv("relative_difference",
            std::abs(printed - kappa * value) / std::max(std::abs(printed), 1e-300));
  }
  return kExitOk;
}

int run_scan(const RunConfig& cfg, const RunFlags& flags, std::ostream& out)
{
  if (!cfg.scan) {
    throw ConfigError("scan: this command needs a scan section");
  }
  groundstate::ScanSpec spec;
  if (cfg.scan->ansatz) {
    spec.ansatz = *cfg.scan->ansatz;
  } else if (cfg.field && cfg.field->ansatz) {
    spec.ansatz = *cfg.field->ansatz;
  } else {
    throw ConfigError("scan.ansatz: missing and the field section names no ansatz");
  }
  if (ansatz_group(spec.ansatz) != cfg.group) {
    throw ConfigError("scan.ansatz: does not belong to group " + std::string(to_string(cfg.group)));
  }
  spec.axes = cfg.scan->axes;
  spec.pinned = cfg.scan->pinned;
  spec.max_points = cfg.scan->max_points;
  spec.g = cfg.coupling;
  spec.volume = cfg.volume;
  const groundstate::ScanTable table = groundstate::scan_grid(spec);

  if (flags.out) {
    std::ofstream f(*flags.out, std::ios::binary);
    if (!f) {
      throw InvalidInput("--out: cannot open " + *flags.out + " for writing");
    }
    groundstate::write_table(f, table);
    f.close();
    if (!f) {
      throw InvalidInput("--out: failed writing " + *flags.out);
    }
    std::size_t divergent = 0;
    for (bool d : table.divergent) {
      divergent += d ? 1 : 0;
    }
    Report r(out);
    header(r, "scan", cfg);
    r.kv("formula", "sigma = B.(R.R)^(-1/2).B / g on a parameter grid");
    r.kv("ansatz", to_string(spec.ansatz)).kv("rows", table.rows()).kv("divergent_rows", divergent);
    r.kv("out", *flags.out);
  } else {
    groundstate::write_table(out, table);
  }
  return kExitOk;
}

void lattice_header(Report& r, const LatticeBackground& bg, std::uint64_t seed,
                    const RunConfig& cfg)
{
  r.kv("L", bg.L)
      .kv("spacing", bg.spacing)
      .kv("scheme", to_string(bg.scheme))
      .kv("background", cfg.lattice->background)
      .kv("seed", seed);
}

int run_qc_check(const RunConfig& cfg, const RunFlags& flags, std::ostream& out)
{
  const std::uint64_t seed = effective_seed(cfg, flags);
  const LatticeBackground bg = config::build_background(cfg, seed);
  const TangentPair t = config::build_perturbation(cfg, bg, seed);
  const double tol = flags.tol.value_or(cfg.tolerances.membership);
  const ConstraintReport c = constraints::qc_check(bg, t, tol);
  Report r(out);
  header(r, "qc-check", cfg);
  r.kv("formula", "slice |J'(J t)|, linearized |J'(t)|, quadratic |g [a ^ e]|; "
                  "J'(a,e) = div e + g[A,e] + g[a,E], J(a,e) = (-e,a)");
  lattice_header(r, bg, seed, cfg);
  r.kv("perturbation", cfg.lattice->perturbation);
  r.kv("gauss_law_residual", constraints::norm(bg, constraints::momentum_map(bg)));
  r.kv("slice_residual", c.slice_residual)
      .kv("linear_residual", c.linear_residual)
      .kv("quadratic_residual", c.quadratic_residual)
      .kv("tolerance", c.tolerance)
      .flag("member", c.member);
  return kExitOk;
}

int run_splittings(const RunConfig& cfg, const RunFlags& flags, std::ostream& out)
{
  const std::uint64_t seed = effective_seed(cfg, flags);
  const LatticeBackground bg = config::build_background(cfg, seed);
  const SplittingReport s = constraints::verify_splittings(bg);
  Report r(out);
  header(r, "splittings", cfg);
  r.kv("formula", "tangent = Ker J' + Im J'*, sections = Ker J'* + Im J'");
  lattice_header(r, bg, seed, cfg);
  r.kv("dim_total", s.dim_total)
      .kv("dim_section", s.dim_section)
      .kv("dim_ker_jprime", s.dim_ker_jprime)
      .kv("dim_im_jprime_adj", s.dim_im_jprime_adj)
      .kv("dim_ker_jprime_adj", s.dim_ker_jprime_adj)
      .kv("dim_im_jprime", s.dim_im_jprime)
      .flag("rank_nullity", s.rank_nullity_holds())
      .kv("orth_residual", s.orth_residual)
      .kv("adjoint_residual", s.adjoint_residual);
  return kExitOk;
}

int run_symmetries(const RunConfig& cfg, const RunFlags& flags, std::ostream& out)
{
  const std::uint64_t seed = effective_seed(cfg, flags);
  const LatticeBackground bg = config::build_background(cfg, seed);
  const std::vector<DualSection> basis = constraints::symmetry_space(bg);
  Report r(out);
  header(r, "symmetries", cfg);
  r.kv("formula", "infinitesimal symmetries = Ker J'*, (J'* v) = (g[E,v], -grad v + g[v,A])");
  lattice_header(r, bg, seed, cfg);
  r.kv("dimension", basis.size());
  const int d = bg.dim();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    // lattice average of the color vector, enough to read off constant sections
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (int site = 0; site < bg.sites(); ++site) {
      mean += basis[k].v.segment(Eigen::Index(site) * d, d);
    }
    mean /= bg.sites();
    r.kv("basis_" + std::to_string(k) + "_mean_color", join(mean));
  }
  return kExitOk;
}

}  // namespace

std::span<const std::string_view> names()
{
  return kNames;
}

int run(std::string_view command, const RunConfig& cfg, const RunFlags& flags, std::ostream& out,
        std::ostream& err)
{
  try {
    if (command == "classify") {
      return run_classify(cfg, flags, out);
    }
    if (command == "sigma") {
      return run_sigma(cfg, flags, out);
    }
    if (command == "resolvent") {
      return run_resolvent(cfg, flags, out);
    }
    if (command == "scan") {
      return run_scan(cfg, flags, out);
    }
    if (command == "qc-check") {
      return run_qc_check(cfg, flags, out);
    }
    if (command == "splittings") {
      return run_splittings(cfg, flags, out);
    }
    if (command == "symmetries") {
      return run_symmetries(cfg, flags, out);
    }
    err << "error: unknown command \"" << command << "\"\n";
    return kExitInvalid;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << " (partial estimate " << e.partial_estimate()
        << ", error estimate " << e.error_estimate() << ")\n";
    return kExitNumerical;
  } catch (const DivergenceError& e) {
    err << "divergence: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace gaugestrata::commands
