#include "bsvhhg/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "bsvhhg/budget.hpp"
#include "bsvhhg/decoherence.hpp"
#include "bsvhhg/error.hpp"
#include "bsvhhg/hhg.hpp"
#include "bsvhhg/parallel.hpp"
#include "bsvhhg/propagation.hpp"
#include "bsvhhg/units.hpp"
#include "bsvhhg/version.hpp"

namespace bsv {

namespace {

using field::FieldStateDistribution;
using propagation::NodeResponse;
using propagation::OnAxisForm;

struct Context {
  const ScenarioConfig& cfg;
  ionization::AtomSpecies species;
  field::DriverPulse pulse;
  double omega_si;
  hhg::EnsembleOptions hhg_options;
  ionization::IonizationOptions yield_options;
  ionization::IonizationOptions plasma_options;
  OnAxisForm form;

  explicit Context(const ScenarioConfig& c)
      : cfg(c),
        species(resolve_species(c)),
        pulse(c.pulse),
        omega_si(units::omega_si_from_wavelength_nm(c.pulse.wavelength_nm)),
        form(c.paper_literal_eq4 ? OnAxisForm::PaperLiteral : OnAxisForm::Corrected) {
    hhg_options.sfa.spreading_regularizer = c.spreading_regularizer;
    hhg_options.sfa.excursion_cycles = c.excursion_cycles;
    hhg_options.sfa.regularizer = c.ionization_regularizer;
    hhg_options.max_order = c.max_order;
    hhg_options.min_weight = c.min_node_weight;
    hhg_options.threads = c.threads;
    yield_options.regularizer = c.ionization_regularizer;
    plasma_options = yield_options;
    plasma_options.include_mpi = c.plasma_includes_mpi;
  }

  FieldStateDistribution coherent(double intensity) const {
    return FieldStateDistribution::coherent_from_intensity(intensity, cfg.pulse.wavelength_nm);
  }
  FieldStateDistribution bsv(double intensity) const {
    return FieldStateDistribution::bsv_from_intensity(intensity, cfg.quantization_volume, cfg.pulse.wavelength_nm);
  }
  field::QuadratureEnsemble ensemble(const FieldStateDistribution& d) const {
    return field::build_ensemble(d, cfg.nodes);
  }
  hhg::EnsembleSpectrum spectra(const FieldStateDistribution& d, unsigned threads) const {
    auto opts = hhg_options;
    opts.threads = threads;
    return hhg::ensemble_spectrum(ensemble(d), pulse, species, opts);
  }
  std::vector<NodeResponse> responses(const hhg::EnsembleSpectrum& s, int q) const {
    return propagation::node_responses(s, pulse, species, q, plasma_options, cfg.threads);
  }
  double absorption_length(double density) const {
    return propagation::absorption_length(cfg.medium.absorption_cross_section, density);
  }
  double propagated(const std::vector<NodeResponse>& nodes, double density, double length, int q) const {
    propagation::MediumConfig m = cfg.medium;
    m.density = density;
    m.length = length;
    return propagation::propagated_average(nodes, m, q, omega_si, form);
  }
};

nlohmann::json optional_json(const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

ScenarioResult fig2b(const Context& ctx) {
  const auto grid = ctx.cfg.intensity_grid.resolve();
  auto rows = parallel_map(grid.size(), ctx.cfg.threads, [&](std::size_t i) {
    const double intensity = grid[i];
    const auto coh = ionization::final_yield(ctx.pulse, ctx.coherent(intensity).peak_amplitude(), ctx.species,
                                             ctx.yield_options);
    const auto bsv = ionization::ensemble_yield(ctx.bsv(intensity), ctx.pulse, ctx.species, ctx.yield_options,
                                                ctx.cfg.yield_nodes, 1, ctx.cfg.yield_rule);
    return std::vector<double>{intensity, coh.total, coh.sfi, coh.mpi, bsv.total, bsv.sfi, bsv.mpi};
  });
  ScenarioResult r;
  r.table.columns = {"mean_intensity", "yield_coherent",     "yield_sfi_coherent", "yield_mpi_coherent",
                     "yield_bsv",      "yield_sfi_bsv",      "yield_mpi_bsv"};
  r.table.units = {"W/cm^2", "probability", "probability", "probability", "probability", "probability", "probability"};
  for (auto& row : rows) r.table.add_row(std::move(row));
  return r;
}

ScenarioResult fig2c(const Context& ctx) {
  const auto grid = ctx.cfg.intensity_grid.resolve();
  const int q = ctx.cfg.harmonic;
  auto rows = parallel_map(grid.size(), ctx.cfg.threads, [&](std::size_t i) {
    const double intensity = grid[i];
    const auto coh = ctx.spectra(ctx.coherent(intensity), 1);
    const auto bsv = ctx.spectra(ctx.bsv(intensity), 1);
    return std::vector<double>{intensity, hhg::harmonic_photon_number(coh.mean, q),
                               hhg::harmonic_photon_number(bsv.mean, q)};
  });
  ScenarioResult r;
  r.table.columns = {"mean_intensity", fmt::format("n{}_coherent", q), fmt::format("n{}_bsv", q)};
  r.table.units = {"W/cm^2", "relative", "relative"};
  for (auto& row : rows) r.table.add_row(std::move(row));
  return r;
}

ScenarioResult fig2d(const Context& ctx) {
  const double intensity = ctx.cfg.mean_intensity;
  const auto coh = ctx.spectra(ctx.coherent(intensity), ctx.cfg.threads);
  const auto bsv_dist = ctx.bsv(intensity);
  const auto bsv = ctx.spectra(bsv_dist, ctx.cfg.threads);
  const double drop = ctx.cfg.cutoff_drop_db;
  const double field_au = units::field_au_from_intensity_w_cm2(intensity);

  ScenarioResult r;
  r.table.columns = {"harmonic_order", "power_coherent", "power_bsv"};
  r.table.units = {"w/w0", "a.u.", "a.u."};
  for (std::size_t k = 0; k < coh.mean.order.size(); ++k) {
    r.table.add_row({coh.mean.order[k], coh.mean.power[k], bsv.mean.power[k]});
  }
  r.metadata = {{"mean_intensity_w_cm2", intensity},
                {"squeezing_r", bsv_dist.squeezing()},
                {"cutoff_drop_db", drop},
                {"cutoff_coherent", optional_json(hhg::detect_cutoff(coh.mean, drop))},
                {"cutoff_bsv", optional_json(hhg::detect_cutoff(bsv.mean, drop))},
                {"cutoff_semiclassical",
                 hhg::semiclassical_cutoff_order(ctx.species.ionization_potential, field_au, ctx.pulse.omega())},
                {"spectrum_coherent", coh.mean},
                {"spectrum_bsv", bsv.mean},
                {"bsv_skipped_weight", bsv.skipped_weight}};
  return r;
}

// Positive-amplitude BSV nodes at the mean intensity, ascending.
std::vector<std::size_t> positive_nodes(const std::vector<NodeResponse>& nodes) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].evaluated && nodes[k].amplitude > 0.0) idx.push_back(k);
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return nodes[a].amplitude < nodes[b].amplitude; });
  return idx;
}

ScenarioResult fig3a(const Context& ctx) {
  const auto ens = ctx.ensemble(ctx.bsv(ctx.cfg.mean_intensity));
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < ens.nodes.size(); ++k) {
    if (ens.nodes[k].amplitude > 0.0 && ens.nodes[k].weight >= ctx.cfg.min_node_weight) idx.push_back(k);
  }
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return ens.nodes[a].amplitude < ens.nodes[b].amplitude; });
  auto yields = parallel_map(idx.size(), ctx.cfg.threads, [&](std::size_t i) {
    return ionization::final_yield(ctx.pulse, ens.nodes[idx[i]].amplitude, ctx.species, ctx.plasma_options).total;
  });
  ScenarioResult r;
  r.table.columns = {"intensity", "weight", "yield", "electron_mismatch", "total_mismatch", "coherence_length",
                     "absorption_length"};
  r.table.units = {"W/cm^2", "dimensionless", "probability", "rad/cm", "rad/cm", "cm", "cm"};
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto& node = ens.nodes[idx[i]];
    const auto pm = propagation::phase_match(ctx.cfg.medium, ctx.cfg.harmonic, ctx.omega_si, yields[i], ctx.form);
    r.table.add_row({units::intensity_w_cm2_from_field_v_per_cm(node.amplitude), node.weight, yields[i],
                     pm.electron_mismatch, pm.total_mismatch, pm.coherence_length, pm.absorption_length});
  }
  r.metadata = {{"mean_intensity_w_cm2", ctx.cfg.mean_intensity},
                {"harmonic", ctx.cfg.harmonic},
                {"plasma_includes_mpi", ctx.cfg.plasma_includes_mpi}};
  return r;
}

struct Pair {
  std::vector<NodeResponse> coherent;
  std::vector<NodeResponse> bsv;
  hhg::EnsembleSpectrum coherent_spectra;
  hhg::EnsembleSpectrum bsv_spectra;
  double squeezing = 0.0;
};

Pair responses_at_mean(const Context& ctx) {
  Pair p;
  const auto bsv_dist = ctx.bsv(ctx.cfg.mean_intensity);
  p.squeezing = bsv_dist.squeezing();
  p.coherent_spectra = ctx.spectra(ctx.coherent(ctx.cfg.mean_intensity), ctx.cfg.threads);
  p.bsv_spectra = ctx.spectra(bsv_dist, ctx.cfg.threads);
  p.coherent = ctx.responses(p.coherent_spectra, ctx.cfg.harmonic);
  p.bsv = ctx.responses(p.bsv_spectra, ctx.cfg.harmonic);
  return p;
}

ScenarioResult fig3b(const Context& ctx) {
  const auto p = responses_at_mean(ctx);
  const double density = ctx.cfg.medium.density;
  const double length = ctx.cfg.fig3b_absorption_lengths * ctx.absorption_length(density);
  const int q = ctx.cfg.harmonic;
  ScenarioResult r;
  r.table.columns = {"intensity", "weight", "yield", fmt::format("n{}_single_atom", q),
                     fmt::format("n{}_propagated", q)};
  r.table.units = {"W/cm^2", "dimensionless", "probability", "relative", "relative"};
  for (std::size_t k : positive_nodes(p.bsv)) {
    NodeResponse single = p.bsv[k];
    single.weight = 1.0;
    r.table.add_row({single.intensity, p.bsv[k].weight, single.yield, single.photon_number,
                     ctx.propagated({single}, density, length, q)});
  }
  const double coh = ctx.propagated(p.coherent, density, length, q);
  const double bsv = ctx.propagated(p.bsv, density, length, q);
  r.metadata = {{"mean_intensity_w_cm2", ctx.cfg.mean_intensity},
                {"squeezing_r", p.squeezing},
                {"medium_length_cm", length},
                {"marker_coherent", coh},
                {"marker_bsv", bsv},
                {"coherent_over_bsv", coh / bsv}};
  return r;
}

ScenarioResult fig3c(const Context& ctx) {
  const auto p = responses_at_mean(ctx);
  const double density = ctx.cfg.medium.density;
  const double la = ctx.absorption_length(density);
  const int q = ctx.cfg.harmonic;
  const auto lengths = linspace(0.0, ctx.cfg.scan_max_absorption_lengths * la, ctx.cfg.scan_points);
  propagation::MediumConfig m = ctx.cfg.medium;
  const auto coh = propagation::medium_length_scan(p.coherent, m, q, ctx.omega_si, lengths, ctx.form);
  const auto bsv = propagation::medium_length_scan(p.bsv, m, q, ctx.omega_si, lengths, ctx.form);
  ScenarioResult r;
  r.table.columns = {"medium_length", "absorption_lengths", fmt::format("n{}_coherent", q), fmt::format("n{}_bsv", q)};
  r.table.units = {"cm", "L_a", "relative", "relative"};
  for (std::size_t i = 0; i < lengths.size(); ++i) r.table.add_row({lengths[i], lengths[i] / la, coh[i], bsv[i]});
  const double at2 = ctx.propagated(p.coherent, density, 2.0 * la, q) / ctx.propagated(p.bsv, density, 2.0 * la, q);
  const double at25 = ctx.propagated(p.coherent, density, 2.5 * la, q) / ctx.propagated(p.bsv, density, 2.5 * la, q);
  r.metadata = {{"mean_intensity_w_cm2", ctx.cfg.mean_intensity},
                {"squeezing_r", p.squeezing},
                {"absorption_length_cm", la},
                {"coherent_over_bsv_at_2La", at2},
                {"coherent_over_bsv_at_2.5La", at25},
                {"onaxis_form", ctx.cfg.paper_literal_eq4 ? "paper_literal" : "corrected"}};
  return r;
}

ScenarioResult fig4a(const Context& ctx) {
  const double rsq = ctx.cfg.squeezing;
  const double width = ctx.cfg.wigner_half_width * std::exp(rsq);
  const auto axis = decoherence::symmetric_axis(width, static_cast<std::size_t>(ctx.cfg.wigner_points));
  const auto pure = decoherence::wigner_lossy_bsv(rsq, 1.0, axis, axis);
  const auto lossy = decoherence::wigner_lossy_bsv(rsq, 0.5, axis, axis);
  ScenarioResult r;
  r.table.columns = {"x1", "x2", "wigner_lossless", "wigner_half_loss"};
  r.table.units = {"vacuum_std", "vacuum_std", "1/vacuum_var", "1/vacuum_var"};
  for (std::size_t i = 0; i < axis.size(); ++i) {
    for (std::size_t j = 0; j < axis.size(); ++j) r.table.add_row({axis[i], axis[j], pure.at(i, j), lossy.at(i, j)});
  }
  r.metadata = {{"squeezing_r", rsq}, {"absorbed_fractions", {0.0, 0.5}}};
  return r;
}

ScenarioResult fig4b(const Context& ctx) {
  const double rsq = ctx.cfg.squeezing;
  ScenarioResult r;
  r.table.columns = {"absorbed_fraction", "var_x1", "var_x2", "heisenberg_excess", "preserves_quantumness"};
  r.table.units = {"dimensionless", "vacuum_var", "vacuum_var", "dimensionless", "bool"};
  for (double a : linspace(0.0, 1.0, ctx.cfg.absorption_points)) {
    const auto s = decoherence::lossy_bsv(rsq, 1.0 - a);
    r.table.add_row({a, s.variances.x1, s.variances.x2, s.heisenberg_excess,
                     decoherence::quantumness_verdict(a) ? 1.0 : 0.0});
  }
  r.metadata = {{"squeezing_r", rsq},
                {"threshold_absorbed_fraction", decoherence::kQuantumnessThreshold},
                {"threshold_inclusive", true},
                {"excess_at_threshold",
                 decoherence::heisenberg_excess(rsq, 1.0 - decoherence::kQuantumnessThreshold)}};
  return r;
}

ScenarioResult fig4c(const Context& ctx) {
  const auto p = responses_at_mean(ctx);
  const int q = ctx.cfg.harmonic;
  ScenarioResult r;
  r.table.columns = {"density", "absorption_length", "medium_length", fmt::format("n{}_coherent", q),
                     fmt::format("n{}_bsv", q), "coherent_over_bsv"};
  r.table.units = {"cm^-3", "cm", "cm", "relative", "relative", "dimensionless"};
  for (double rho : ctx.cfg.density_grid.resolve()) {
    const double la = ctx.absorption_length(rho);
    const double len = ctx.cfg.fig4c_absorption_lengths * la;
    const double coh = ctx.propagated(p.coherent, rho, len, q);
    const double bsv = ctx.propagated(p.bsv, rho, len, q);
    r.table.add_row({rho, la, len, coh, bsv, coh / bsv});
  }
  r.metadata = {{"mean_intensity_w_cm2", ctx.cfg.mean_intensity},
                {"squeezing_r", p.squeezing},
                {"medium_absorption_lengths", ctx.cfg.fig4c_absorption_lengths}};
  return r;
}

ScenarioResult fig4d(const Context& ctx) {
  const auto bsv_dist = ctx.bsv(ctx.cfg.mean_intensity);
  const auto coh_spec = ctx.spectra(ctx.coherent(ctx.cfg.mean_intensity), ctx.cfg.threads);
  const auto bsv_spec = ctx.spectra(bsv_dist, ctx.cfg.threads);
  const double density = ctx.cfg.medium.density;
  const double la = ctx.absorption_length(density);
  const double len_coh = ctx.cfg.fig4d_coherent_absorption_lengths * la;
  const double len_bsv = ctx.cfg.fig4d_bsv_absorption_lengths * la;
  // Highest odd order whose [q - 1, q + 1] band fits on the spectrum axis.
  const int top = static_cast<int>(std::floor(coh_spec.mean.order.back() - 1.0));
  std::vector<int> orders;
  for (int q = 3; q <= top; q += 2) orders.push_back(q);
  auto rows = parallel_map(orders.size(), ctx.cfg.threads, [&](std::size_t i) {
    const int q = orders[i];
    const auto coh = propagation::node_responses(coh_spec, ctx.pulse, ctx.species, q, ctx.plasma_options, 1);
    const auto bsv = propagation::node_responses(bsv_spec, ctx.pulse, ctx.species, q, ctx.plasma_options, 1);
    return std::vector<double>{static_cast<double>(q), ctx.propagated(coh, density, len_coh, q),
                               ctx.propagated(bsv, density, len_bsv, q)};
  });
  ScenarioResult r;
  r.table.columns = {"harmonic_order", "n_coherent", "n_bsv"};
  r.table.units = {"w/w0", "relative", "relative"};
  for (auto& row : rows) r.table.add_row(std::move(row));
  r.metadata = {{"mean_intensity_w_cm2", ctx.cfg.mean_intensity},
                {"squeezing_r", bsv_dist.squeezing()},
                {"medium_length_coherent_cm", len_coh},
                {"medium_length_bsv_cm", len_bsv},
                {"medium_parameters_per_order", "absorption cross-section and dispersion mismatch held at the configured values"}};
  return r;
}

ScenarioResult budget(const Context& ctx) {
  const auto& c = ctx.cfg;
  const auto b = estimate_photon_budget(c.photons_ir, c.spot_area_ref, c.spot_area_target, c.ce_ref,
                                        c.coherent_over_bsv_ratio);
  const double lq = decoherence::max_quantum_length(c.photons_ir, c.photons_per_ionization, c.medium.density,
                                                    c.medium.spot_area, c.saturated_fraction);
  const double la = ctx.absorption_length(c.medium.density);
  ScenarioResult r;
  r.table.columns = {"photons_ir",        "spot_area_ref", "spot_area_target",    "ce_ref",
                     "ce_target",         "coherent_over_bsv", "photons_per_pulse", "max_quantum_length",
                     "absorption_length"};
  r.table.units = {"photons", "cm^2", "cm^2", "dimensionless", "dimensionless", "dimensionless", "photons", "cm", "cm"};
  r.table.add_row({c.photons_ir, c.spot_area_ref, c.spot_area_target, c.ce_ref, b.conversion_efficiency,
                   c.coherent_over_bsv_ratio, b.photons_per_pulse, lq, la});
  r.metadata = {{"conversion_efficiency", b.conversion_efficiency},
                {"photons_per_pulse", b.photons_per_pulse},
                {"max_quantum_length_cm", lq},
                {"max_quantum_length_absorption_lengths", lq / la}};
  return r;
}

using Runner = std::function<ScenarioResult(const Context&)>;

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> r = {
      {"fig2b", fig2b}, {"fig2c", fig2c}, {"fig2d", fig2d}, {"fig3a", fig3a}, {"fig3b", fig3b}, {"fig3c", fig3c},
      {"fig4a", fig4a}, {"fig4b", fig4b}, {"fig4c", fig4c}, {"fig4d", fig4d}, {"budget", budget}};
  return r;
}

}  // namespace

const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, _] : registry()) v.push_back(id);
    return v;
  }();
  return ids;
}

bool is_scenario(const std::string& id) { return registry().contains(id); }

ScenarioResult run_scenario(const std::string& id, const ScenarioConfig& config) {
  const auto it = registry().find(id);
  if (it == registry().end()) throw ConfigError("unknown scenario '" + id + "'");
  const auto findings = validate_config(config);
  if (has_errors(findings)) {
    std::string msg = "invalid configuration:";
    for (const auto& f : findings) {
      if (f.severity == Finding::Severity::Error) msg += "\n  " + f.field + ": " + f.message;
    }
    throw ConfigError(msg);
  }
  const Context ctx(config);
  ScenarioResult result = it->second(ctx);
  result.id = id;
  if (result.metadata.is_null()) result.metadata = nlohmann::json::object();
  nlohmann::json warnings = nlohmann::json::array();
  for (const auto& f : findings) warnings.push_back(f.field + ": " + f.message);
  result.metadata["warnings"] = warnings;
  return result;
}

void write_bundle(const ScenarioResult& result, const ScenarioConfig& config, const std::filesystem::path& out_dir,
                  double runtime_seconds) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + out_dir.string() + ": " + ec.message());
  const std::string hash = config_hash(config);
  const std::string csv_name = result.id + ".csv";
  const std::string meta_name = result.id + ".meta.json";
  write_csv(out_dir / csv_name, result.table);

  nlohmann::json meta = result.metadata;
  meta["scenario"] = result.id;
  meta["config_hash"] = hash;
  meta["version"] = kVersion;
  meta["config"] = to_json(config);
  {
    std::ofstream out(out_dir / meta_name, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + (out_dir / meta_name).string());
    out << meta.dump(2) << '\n';
  }

  const auto manifest_path = out_dir / "manifest.json";
  nlohmann::json manifest;
  if (std::ifstream in(manifest_path); in) {
    try {
      in >> manifest;
    } catch (const nlohmann::json::exception&) {
      manifest = nullptr;
    }
  }
  if (!manifest.is_object() || manifest.value("config_hash", "") != hash) {
    manifest = {{"config_hash", hash}, {"version", kVersion}, {"scenarios", nlohmann::json::object()}};
  }
  manifest["scenarios"][result.id] = {
      {"runtime_seconds", runtime_seconds},
      {"threads", config.threads},
      {"files", {{csv_name, csv_schema(result.table)}, {meta_name, {{"format", "json"}}}}}};
  std::ofstream out(manifest_path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + manifest_path.string());
  out << manifest.dump(2) << '\n';
}

}  // namespace bsv
