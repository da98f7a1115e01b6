#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nnadv/adversarial.hpp"
#include "nnadv/error.hpp"
#include "nnadv/instance.hpp"
#include "nnadv/nnr.hpp"

namespace nnadv {

enum class PerturbScheme { none, strictify };

inline PerturbScheme parse_perturb_scheme(std::string_view name) {
  if (name == "none") return PerturbScheme::none;
  if (name == "strictify") return PerturbScheme::strictify;
  throw ParseError("unknown perturbation scheme '" + std::string(name) + "'");
}

/// The strictify search could not make every step a unique minimizer.
class PerturbationFailed : public Error {
 public:
  PerturbationFailed(std::size_t step, const std::string& why)
      : Error("strictify failed at step " + std::to_string(step) + ": " + why), step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// True when an integer offset stays strictly inside the displacement
/// radius new_scale / (16 n).
inline bool within_displacement_bound(ScaledPoint offset, std::size_t n, std::int64_t new_scale) {
  const std::int64_t sixteen_n = 16 * static_cast<std::int64_t>(n);
  const std::int64_t norm2 = offset.x * offset.x + offset.y * offset.y;
  return sixteen_n * sixteen_n * norm2 < new_scale * new_scale;
}

/// Moves the cities onto a lattice refined by `new_scale`.
///
/// `none` only rescales. `strictify` then nudges cities (by integer lattice
/// units, each within radius new_scale / (16 n)) until the adversarial tour of
/// the instance's family level validates strictly. Failures are validation
/// failures processed front to back: the intended next city moves one unit
/// towards its predecessor, then the whole tour is validated again. The
/// search is deterministic; `seed` does not influence it.
inline Instance perturb(const Instance& instance, PerturbScheme scheme, std::int64_t new_scale,
                        [[maybe_unused]] std::uint64_t seed = 0) {
  const std::size_t n = instance.size();
  if (instance.scale() != 1) throw Error("perturbation starts from a scale-1 instance");
  if (instance.metric().is_graphic()) throw Error("graphic instances cannot be perturbed");
  if (new_scale < 16 * static_cast<std::int64_t>(n)) throw Error("new scale must be at least 16 n");

  std::vector<ScaledPoint> base;
  base.reserve(n);
  for (ScaledPoint p : instance.cities()) base.push_back({p.x * new_scale, p.y * new_scale});
  auto build = [&](const std::vector<ScaledPoint>& offsets) {
    std::vector<ScaledPoint> cities = base;
    for (std::size_t i = 0; i < n; ++i) {
      cities[i].x += offsets[i].x;
      cities[i].y += offsets[i].y;
    }
    return Instance(std::move(cities), new_scale, instance.metric(), instance.landmark_l(), instance.landmark_m(),
                    instance.family_k());
  };

  std::vector<ScaledPoint> offsets(n);
  if (scheme == PerturbScheme::none) return build(offsets);

  if (!instance.family_k()) throw Error("strictify needs a family instance G_k");
  const TourPath tour = build_adversarial_tour(*instance.family_k()).tour;
  if (tour.size() != n) throw Error("instance does not match its family level");

  const std::size_t budget = 64 * n;
  std::size_t last_failed = 0;
  for (std::size_t nudges = 0; nudges <= budget; ++nudges) {
    Instance candidate = build(offsets);
    const NnrVerdict verdict = validate_nnr(candidate, tour, ValidationMode::strict);
    if (verdict.valid) return candidate;
    const std::size_t step = *verdict.failed_step;
    last_failed = step;
    if (nudges == budget) break;

    const ScaledPoint from = candidate.city(tour.order[step - 1]);
    const std::size_t target = tour.order[step];
    const ScaledPoint to = candidate.city(target);
    const std::int64_t dx = from.x - to.x;
    const std::int64_t dy = from.y - to.y;
    ScaledPoint moved = offsets[target];
    if (std::abs(dx) >= std::abs(dy)) {
      moved.x += dx > 0 ? 1 : -1;
    } else {
      moved.y += dy > 0 ? 1 : -1;
    }
    if (!within_displacement_bound(moved, n, new_scale)) {
      throw PerturbationFailed(step, "displacement bound reached for city " + std::to_string(target));
    }
    offsets[target] = moved;
  }
  throw PerturbationFailed(last_failed, "nudge budget exhausted");
}

}  // namespace nnadv
