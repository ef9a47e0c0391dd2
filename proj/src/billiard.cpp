#include "fracspec/billiard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "fracspec/error.hpp"

namespace fracspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Vec {
  double x = 0.0;
  double y = 0.0;
};

Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
Vec operator*(double s, Vec a) { return {s * a.x, s * a.y}; }
double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }

struct Hit {
  double time = kInf;
  Vec normal;  // outward unit normal at the hit point
};

// Time until the ray p + t w leaves the domain.
Hit next_hit(const Domain& domain, Vec p, Vec w) {
  Hit hit;
  switch (domain.kind()) {
    case DomainKind::interval:
    case DomainKind::rectangle: {
      const double hx = 0.5 * domain.param(0);
      const double hy = domain.kind() == DomainKind::interval ? 0.0 : 0.5 * domain.param(1);
      if (w.x != 0.0) {
        const double t = ((w.x > 0 ? hx : -hx) - p.x) / w.x;
        if (t < hit.time) hit = {t, {w.x > 0 ? 1.0 : -1.0, 0.0}};
      }
      if (domain.kind() == DomainKind::rectangle && w.y != 0.0) {
        const double t = ((w.y > 0 ? hy : -hy) - p.y) / w.y;
        if (t < hit.time) hit = {t, {0.0, w.y > 0 ? 1.0 : -1.0}};
      }
      break;
    }
    case DomainKind::disk: {
      // |p + t w|^2 = R^2, positive root
      const double r = domain.param(0);
      const double b = dot(p, w);
      const double c = dot(p, p) - r * r;
      const double t = -b + std::sqrt(std::max(b * b - c, 0.0));
      const Vec q = p + t * w;
      hit = {t, {q.x / r, q.y / r}};
      break;
    }
    case DomainKind::slit_square:
      throw UnsupportedError("billiards are not defined on the slit square");
  }
  hit.time = std::max(hit.time, 0.0);
  return hit;
}

struct Sample {
  Vec position;
  Vec direction;
};

Sample draw(const Domain& domain, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double rx = domain.kind() == DomainKind::disk ? domain.param(0) : 0.5 * domain.param(0);
  const double ry = domain.kind() == DomainKind::disk        ? domain.param(0)
                    : domain.kind() == DomainKind::rectangle ? 0.5 * domain.param(1)
                                                             : 0.0;
  Sample s;
  do {
    s.position = {rx * unit(rng), ry * unit(rng)};
  } while (!domain.contains({s.position.x, s.position.y}));
  if (domain.dimension() == 1) {
    s.direction = {unit(rng) < 0.0 ? -1.0 : 1.0, 0.0};
  } else {
    const double a = angle(rng);
    s.direction = {std::cos(a), std::sin(a)};
  }
  return s;
}

std::mt19937_64 sample_rng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

}  // namespace

ReturnDistances billiard_return_distances(const Domain& domain, int samples, double horizon,
                                          std::uint64_t seed) {
  if (domain.kind() == DomainKind::slit_square) {
    throw UnsupportedError("billiards are not defined on the slit square");
  }
  if (samples < 1) throw ConfigError("need at least one sample");
  if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");

  ReturnDistances out;
  out.min_distance.assign(static_cast<std::size_t>(samples), kInf);
  out.min_transversality = kInf;
  for (int i = 0; i < samples; ++i) {
    std::mt19937_64 rng = sample_rng(seed, i);
    const Sample start = draw(domain, rng);
    Vec p = start.position;
    Vec w = start.direction;
    double t = 0.0;
    bool reflected = false;
    double best2 = kInf;
    while (t < horizon) {
      const Hit hit = next_hit(domain, p, w);
      const double span = std::min(hit.time, horizon - t);
      if (reflected) {
        // Closest approach along this segment; the direction is constant on it.
        const Vec dw = w - start.direction;
        const Vec dp = p - start.position;
        const double s = std::clamp(-dot(dp, w), 0.0, span);
        const Vec q = dp + s * w;
        best2 = std::min(best2, dot(q, q) + dot(dw, dw));
      }
      if (hit.time > horizon - t) break;
      t += hit.time;
      p = p + hit.time * w;
      const double cosine = dot(w, hit.normal);
      out.min_transversality =
          std::min(out.min_transversality, std::asin(std::clamp(std::abs(cosine), 0.0, 1.0)));
      w = w - (2.0 * cosine) * hit.normal;
      const double norm = std::sqrt(dot(w, w));
      w = (1.0 / norm) * w;
      reflected = true;
      ++out.reflections;
    }
    out.min_distance[static_cast<std::size_t>(i)] = std::sqrt(best2);
  }
  if (out.reflections == 0) out.min_transversality = 0.0;
  return out;
}

std::vector<BilliardReport> periodic_orbit_fractions(const Domain& domain, int samples,
                                                     double horizon,
                                                     const std::vector<double>& epsilons,
                                                     std::uint64_t seed) {
  if (samples < 1000) throw ConfigError("billiard estimator needs at least 1000 samples");
  const ReturnDistances r = billiard_return_distances(domain, samples, horizon, seed);
  std::vector<BilliardReport> out;
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw ConfigError("epsilon must be positive");
    BilliardReport rep;
    rep.samples = samples;
    rep.horizon = horizon;
    rep.epsilon = eps;
    rep.min_transversality = r.min_transversality;
    rep.reflections = r.reflections;
    const auto hits = std::count_if(r.min_distance.begin(), r.min_distance.end(),
                                    [eps](double d) { return d < eps; });
    rep.near_periodic_fraction = static_cast<double>(hits) / samples;
    out.push_back(rep);
  }
  return out;
}

BilliardReport periodic_orbit_fraction(const Domain& domain, int samples, double horizon,
                                       double epsilon, std::uint64_t seed) {
  return periodic_orbit_fractions(domain, samples, horizon, {epsilon}, seed).front();
}

}  // namespace fracspec
