#include "nlsg/rearrange.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "nlsg/error.hpp"

namespace nlsg {

namespace {

constexpr std::array<double, 4> kT = {0.5 - 0.5 * 0.8611363115940526, 0.5 - 0.5 * 0.3399810435848563,
                                      0.5 + 0.5 * 0.3399810435848563, 0.5 + 0.5 * 0.8611363115940526};
constexpr std::array<double, 4> kW = {0.5 * 0.3478548451374538, 0.5 * 0.6521451548625461,
                                      0.5 * 0.6521451548625461, 0.5 * 0.3478548451374538};

void require_nonnegative(const std::vector<Cell>& cells) {
  for (const auto& c : cells)
    if (c.a < 0.0 || c.b < 0.0) fail(Errc::NegativeValues, "rearrangement needs u >= 0");
}

}  // namespace

double PiecewiseLinear::eval(double t) const {
  if (t <= x.front()) return y.front();
  if (t >= x.back()) return y.back();
  auto it = std::upper_bound(x.begin(), x.end(), t);
  auto k = static_cast<std::size_t>(std::distance(x.begin(), it));
  const double dx = x[k] - x[k - 1];
  if (dx <= 0.0) return y[k];
  return y[k - 1] + (y[k] - y[k - 1]) * (t - x[k - 1]) / dx;
}

double PiecewiseLinear::lp_integral(double p) const {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const double h = x[k + 1] - x[k];
    if (h <= 0.0) continue;
    double c = 0.0;
    for (int q = 0; q < 4; ++q) c += kW[q] * std::pow(std::abs(y[k] + (y[k + 1] - y[k]) * kT[q]), p);
    s += h * c;
  }
  return s;
}

double PiecewiseLinear::kinetic() const {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const double h = x[k + 1] - x[k];
    if (h <= 0.0) continue;
    const double d = y[k + 1] - y[k];
    s += d * d / h;
  }
  return 0.5 * s;
}

std::vector<double> PiecewiseLinear::resample(double h) const {
  const double len = upper() - lower();
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / h - 1e-12)));
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    out[i] = eval(lower() + len * static_cast<double>(i) / static_cast<double>(n));
  return out;
}

std::vector<Cell> cells_of(const GraphFunction& u) {
  std::vector<Cell> out;
  const auto& d = u.disc();
  for (std::size_t e = 0; e < d.graph().num_edges(); ++e) {
    const auto n = d.segments(e);
    for (std::size_t i = 0; i < n; ++i) out.push_back({u.at(e, i), u.at(e, i + 1), d.spacing(e)});
  }
  return out;
}

std::vector<Cell> cells_of(const PiecewiseLinear& f) {
  std::vector<Cell> out;
  for (std::size_t k = 0; k + 1 < f.x.size(); ++k) {
    const double h = f.x[k + 1] - f.x[k];
    if (h > 0.0) out.push_back({f.y[k], f.y[k + 1], h});
  }
  return out;
}

DistributionFunction::DistributionFunction(const std::vector<Cell>& cells) {
  require_nonnegative(cells);
  if (cells.empty()) fail(Errc::InvalidArgument, "no cells");
  struct Ev {
    double level;
    std::size_t cell;
    int kind;  // 0 start, 1 end, 2 plateau
  };
  std::vector<Ev> ev;
  std::vector<double> lo(cells.size()), span(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    total_ += cells[c].h;
    lo[c] = std::min(cells[c].a, cells[c].b);
    const double hi = std::max(cells[c].a, cells[c].b);
    span[c] = hi - lo[c];
    if (hi > lo[c]) {
      ev.push_back({lo[c], c, 0});
      ev.push_back({hi, c, 1});
    } else {
      ev.push_back({lo[c], c, 2});
    }
  }
  std::sort(ev.begin(), ev.end(), [](const Ev& l, const Ev& r) { return l.level < r.level; });

  // cells crossing the current open interval; each interval's drop is summed
  // cell by cell so nearly flat cells cannot cause cancellation
  std::vector<std::size_t> active;
  std::vector<std::size_t> pos(cells.size(), 0);
  double rho = total_;
  double prev = ev.front().level;
  std::size_t i = 0;
  while (i < ev.size()) {
    const double t = ev[i].level;
    double drop = 0.0;
    if (t > prev)
      for (auto c : active) drop += cells[c].h * std::min(1.0, (t - std::max(prev, lo[c])) / span[c]);
    const double l = rho - drop;
    double plateau = 0.0;
    double slope = 0.0;
    for (; i < ev.size() && ev[i].level == t; ++i) {
      const auto c = ev[i].cell;
      if (ev[i].kind == 2) {
        plateau += cells[c].h;
      } else if (ev[i].kind == 0) {
        pos[c] = active.size();
        active.push_back(c);
      } else {
        const auto k = pos[c];
        active[k] = active.back();
        pos[active[k]] = k;
        active.pop_back();
      }
    }
    for (auto c : active) slope += cells[c].h / span[c];
    levels_.push_back(t);
    left_.push_back(std::max(l, 0.0));
    right_.push_back(std::max(l - plateau, 0.0));
    slopes_.push_back(slope);
    rho = right_.back();
    prev = t;
  }
  right_.back() = 0.0;
  slopes_.pop_back();
}

double DistributionFunction::operator()(double t) const {
  if (t < levels_.front()) return total_;
  if (t >= levels_.back()) return 0.0;
  auto it = std::upper_bound(levels_.begin(), levels_.end(), t);
  const auto k = static_cast<std::size_t>(std::distance(levels_.begin(), it)) - 1;
  const double frac = (t - levels_[k]) / (levels_[k + 1] - levels_[k]);
  return right_[k] + (left_[k + 1] - right_[k]) * frac;
}

double DistributionFunction::left_limit(double t) const {
  auto it = std::lower_bound(levels_.begin(), levels_.end(), t);
  if (it != levels_.end() && *it == t) return left_[static_cast<std::size_t>(it - levels_.begin())];
  if (t <= levels_.front()) return total_;
  return (*this)(t);
}

DistributionFunction distribution(const GraphFunction& u) { return DistributionFunction(cells_of(u)); }

PiecewiseLinear monotone_rearrangement(const DistributionFunction& rho) {
  PiecewiseLinear f;
  const auto& lv = rho.levels();
  const auto& L = rho.left();
  const auto& R = rho.right();
  for (std::size_t k = lv.size(); k-- > 0;) {
    if (f.x.empty() || R[k] > f.x.back() || f.y.back() != lv[k]) {
      f.x.push_back(std::max(R[k], f.x.empty() ? 0.0 : f.x.back()));
      f.y.push_back(lv[k]);
    }
    if (L[k] > f.x.back()) {
      f.x.push_back(L[k]);
      f.y.push_back(lv[k]);
    }
  }
  if (f.x.back() < rho.total_length()) {
    f.x.push_back(rho.total_length());
    f.y.push_back(lv.front());
  }
  f.x.front() = 0.0;
  return f;
}

PiecewiseLinear monotone_rearrangement(const GraphFunction& u) {
  return monotone_rearrangement(distribution(u));
}

PiecewiseLinear monotone_rearrangement(const PiecewiseLinear& f) {
  return monotone_rearrangement(DistributionFunction(cells_of(f)));
}

PiecewiseLinear symmetrize(const PiecewiseLinear& m) {
  PiecewiseLinear s;
  for (std::size_t k = m.x.size(); k-- > 0;) {
    s.x.push_back(-m.x[k] / 2.0);
    s.y.push_back(m.y[k]);
  }
  for (std::size_t k = 1; k < m.x.size(); ++k) {
    s.x.push_back(m.x[k] / 2.0);
    s.y.push_back(m.y[k]);
  }
  return s;
}

PiecewiseLinear symmetric_rearrangement(const GraphFunction& u) {
  return symmetrize(monotone_rearrangement(u));
}

int PreimageCount::at(double t) const {
  auto it = std::upper_bound(lo.begin(), lo.end(), t);
  if (it == lo.begin()) return 0;
  const auto k = static_cast<std::size_t>(std::distance(lo.begin(), it)) - 1;
  return t < hi[k] ? count[k] : 0;
}

int PreimageCount::min_count() const {
  return count.empty() ? 0 : *std::min_element(count.begin(), count.end());
}

PreimageCount preimage_count(const GraphFunction& u) {
  const auto cells = cells_of(u);
  require_nonnegative(cells);
  std::vector<double> vals;
  for (const auto& c : cells) {
    vals.push_back(c.a);
    vals.push_back(c.b);
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  if (vals.size() < 2) fail(Errc::ConstantFunction, "preimage count of a constant function");

  PreimageCount out;
  std::vector<int> diff(vals.size() + 1, 0);
  auto index = [&](double v) {
    return static_cast<std::size_t>(std::lower_bound(vals.begin(), vals.end(), v) - vals.begin());
  };
  for (const auto& c : cells) {
    const double lo = std::min(c.a, c.b), hi = std::max(c.a, c.b);
    if (hi == lo) {
      out.plateaus.push_back(lo);
      continue;
    }
    ++diff[index(lo)];
    --diff[index(hi)];
  }
  int run = 0;
  for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
    run += diff[k];
    out.lo.push_back(vals[k]);
    out.hi.push_back(vals[k + 1]);
    out.count.push_back(run);
  }
  std::sort(out.plateaus.begin(), out.plateaus.end());
  out.plateaus.erase(std::unique(out.plateaus.begin(), out.plateaus.end()), out.plateaus.end());
  return out;
}

std::vector<int> preimage_count(const GraphFunction& u, const std::vector<double>& levels) {
  const auto cells = cells_of(u);
  require_nonnegative(cells);
  std::vector<int> out;
  for (double t : levels) {
    int n = 0;
    for (const auto& c : cells) {
      const double lo = std::min(c.a, c.b), hi = std::max(c.a, c.b);
      if (lo < t && t < hi) ++n;
    }
    out.push_back(n);
  }
  return out;
}

double polya_szego_gap(const GraphFunction& u) {
  return 0.5 * dirichlet_integral(u) - monotone_rearrangement(u).kinetic();
}

double polya_szego_gap_symmetric(const GraphFunction& u) {
  return 0.5 * dirichlet_integral(u) - symmetric_rearrangement(u).kinetic();
}

}  // namespace nlsg
