#include <algorithm>
#include <cmath>

#include "bsvhhg/error.hpp"
#include "bsvhhg/hhg.hpp"
#include "bsvhhg/parallel.hpp"

namespace bsv::hhg {

EnsembleSpectrum ensemble_spectrum(const field::QuadratureEnsemble& ensemble, const field::DriverPulse& pulse,
                                   const ionization::AtomSpecies& species, const EnsembleOptions& options) {
  const auto& nodes = ensemble.nodes;
  if (nodes.empty()) throw DomainError("ensemble has no nodes");
  const std::size_t n = nodes.size();

  // A node whose mirror (-E) was already scheduled reuses its power spectrum:
  // d(t; -E) = -d(t; E).
  std::vector<std::size_t> source(n);
  for (std::size_t k = 0; k < n; ++k) {
    source[k] = k;
    const std::size_t mirror = n - 1 - k;
    if (mirror < k && nodes[mirror].amplitude == -nodes[k].amplitude) source[k] = mirror;
  }

  auto computed = parallel_map(n, options.threads, [&](std::size_t k) -> std::optional<HarmonicSpectrum> {
    if (source[k] != k || nodes[k].weight < options.min_weight) return std::nullopt;
    const auto dipole = sfa_dipole(pulse, nodes[k].amplitude, species, options.sfa);
    return spectrum(dipole, options.max_order);
  });

  EnsembleSpectrum result;
  result.nodes.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto& node = result.nodes[k];
    node.amplitude = nodes[k].amplitude;
    node.weight = nodes[k].weight;
    const auto& spec = computed[source[k]];
    if (nodes[k].weight < options.min_weight || !spec) {
      result.skipped_weight += nodes[k].weight;
      continue;
    }
    node.evaluated = true;
    node.spectrum = *spec;
  }

  const auto first = std::find_if(result.nodes.begin(), result.nodes.end(),
                                  [](const NodeSpectrum& s) { return s.evaluated; });
  if (first == result.nodes.end()) throw NumericalResolutionError("no ensemble node above the weight floor");
  HarmonicSpectrum& mean = result.mean;
  mean = first->spectrum;
  std::fill(mean.power.begin(), mean.power.end(), 0.0);
  mean.parseval_residual = 0.0;
  for (const auto& node : result.nodes) {
    if (!node.evaluated) continue;
    for (std::size_t b = 0; b < mean.power.size(); ++b) mean.power[b] += node.weight * node.spectrum.power[b];
    mean.parseval_residual = std::max(mean.parseval_residual, node.spectrum.parseval_residual);
  }
  mean.cutoff_order = detect_cutoff(mean);
  return result;
}

}  // namespace bsv::hhg
