#include "core/convolution.hpp"

#include <algorithm>
#include <cmath>

namespace repi {

namespace detail {

long next_pow2(long n) {
  long p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft(std::vector<std::complex<double>>& a, bool inverse) {
  const size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw invalid_input("fft size must be a power of two");

  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang =
        (inverse ? 2.0 : -2.0) * 3.14159265358979323846 / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= inv;
  }
}

}  // namespace detail

namespace {

// node samples with the trapezoid weights folded in, so that the discrete
// convolution is the trapezoid approximation of the convolution integral
std::vector<double> weighted_samples(const GridDensity& f) {
  const GridSpec& s = f.spec();
  std::vector<double> v = f.values();
  if (s.dim == 1) {
    v.front() *= 0.5;
    v.back() *= 0.5;
  } else {
    for (long i0 = 0; i0 < s.count[0]; ++i0)
      for (long i1 = 0; i1 < s.count[1]; ++i1)
        v[s.index(i0, i1)] *= s.weight(0, i0) * s.weight(1, i1);
  }
  return v;
}

GridSpec output_spec(const GridSpec& a, const GridSpec& b) {
  GridSpec out = a;
  for (int ax = 0; ax < a.dim; ++ax) {
    out.origin[ax] = a.origin[ax] + b.origin[ax];
    out.count[ax] = a.count[ax] + b.count[ax] - 1;
  }
  if (out.total_nodes() > GridSpec::kCellBudget)
    throw budget_error("convolution output exceeds the cell budget");
  return out;
}

void check_inputs(const GridDensity& f, const GridDensity& g) {
  if (f.dim() != g.dim()) throw invalid_input("convolution dimension mismatch");
  if (!f.spec().same_spacing(g.spec()))
    throw invalid_input("convolution inputs must share grid spacing");
}

// clamp transform ringing; genuinely negative output signals a broken
// transform rather than roundoff. Roundoff ringing grows with the transform
// size, so the error line scales with it; a defective transform produces
// lobes orders of magnitude past this.
GridDensity finish(const GridSpec& spec, std::vector<double> values,
                   bool truncated, long transform_size) {
  double sup = 0.0;
  for (double v : values) sup = std::max(sup, v);
  const double floor = -(1e-12 + 1e-16 * static_cast<double>(transform_size)) *
                       std::max(1.0, sup);
  double clamp = 0.0;
  for (double& v : values) {
    if (v < 0.0) {
      if (v < floor) throw numeric_error("convolution produced negative mass");
      clamp = std::max(clamp, -v);
      v = 0.0;
    }
  }
  double raw_mass = 0.0;
  if (spec.dim == 1) {
    for (long i = 0; i < spec.count[0]; ++i)
      raw_mass += spec.weight(0, i) * values[i];
  } else {
    for (long i0 = 0; i0 < spec.count[0]; ++i0)
      for (long i1 = 0; i1 < spec.count[1]; ++i1)
        raw_mass += spec.weight(0, i0) * spec.weight(1, i1) *
                    values[spec.index(i0, i1)];
  }
  raw_mass *= spec.cell_volume();
  if (!(raw_mass > 0.0)) throw numeric_error("convolution lost all mass");
  for (double& v : values) v /= raw_mass;
  return GridDensity(spec, std::move(values), std::abs(1.0 - raw_mass),
                     truncated, clamp);
}

std::vector<double> fft_convolve_1d(const std::vector<double>& a,
                                    const std::vector<double>& b) {
  const long out_n = static_cast<long>(a.size() + b.size()) - 1;
  const long padded = detail::next_pow2(out_n);
  std::vector<std::complex<double>> fa(padded), fb(padded);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  detail::fft(fa, false);
  detail::fft(fb, false);
  for (long i = 0; i < padded; ++i) fa[i] *= fb[i];
  detail::fft(fa, true);
  std::vector<double> out(out_n);
  for (long i = 0; i < out_n; ++i) out[i] = fa[i].real();
  return out;
}

std::vector<double> fft_convolve_2d(const GridSpec& sa,
                                    const std::vector<double>& a,
                                    const GridSpec& sb,
                                    const std::vector<double>& b,
                                    const GridSpec& so) {
  const long p0 = detail::next_pow2(so.count[0]);
  const long p1 = detail::next_pow2(so.count[1]);
  std::vector<std::complex<double>> fa(p0 * p1), fb(p0 * p1);
  for (long i0 = 0; i0 < sa.count[0]; ++i0)
    for (long i1 = 0; i1 < sa.count[1]; ++i1)
      fa[i0 * p1 + i1] = a[sa.index(i0, i1)];
  for (long i0 = 0; i0 < sb.count[0]; ++i0)
    for (long i1 = 0; i1 < sb.count[1]; ++i1)
      fb[i0 * p1 + i1] = b[sb.index(i0, i1)];

  auto fft2 = [p0, p1](std::vector<std::complex<double>>& m, bool inverse) {
    std::vector<std::complex<double>> line(std::max(p0, p1));
    for (long r = 0; r < p0; ++r) {
      line.assign(m.begin() + r * p1, m.begin() + (r + 1) * p1);
      detail::fft(line, inverse);
      std::copy(line.begin(), line.begin() + p1, m.begin() + r * p1);
    }
    line.resize(p0);
    for (long c = 0; c < p1; ++c) {
      for (long r = 0; r < p0; ++r) line[r] = m[r * p1 + c];
      detail::fft(line, inverse);
      for (long r = 0; r < p0; ++r) m[r * p1 + c] = line[r];
    }
  };
  fft2(fa, false);
  fft2(fb, false);
  for (size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  fft2(fa, true);

  std::vector<double> out(so.total_nodes());
  for (long i0 = 0; i0 < so.count[0]; ++i0)
    for (long i1 = 0; i1 < so.count[1]; ++i1)
      out[so.index(i0, i1)] = fa[i0 * p1 + i1].real();
  return out;
}

}  // namespace

GridDensity convolve(const GridDensity& f, const GridDensity& g) {
  check_inputs(f, g);
  const GridSpec out = output_spec(f.spec(), g.spec());
  const auto a = weighted_samples(f);
  const auto b = weighted_samples(g);
  std::vector<double> h = f.dim() == 1
                              ? fft_convolve_1d(a, b)
                              : fft_convolve_2d(f.spec(), a, g.spec(), b, out);
  const double vol = f.spec().cell_volume();
  for (double& v : h) v *= vol;
  const long transform_size =
      f.dim() == 1 ? detail::next_pow2(out.count[0])
                   : detail::next_pow2(out.count[0]) * detail::next_pow2(out.count[1]);
  return finish(out, std::move(h), f.truncated() || g.truncated(),
                transform_size);
}

GridDensity convolve_direct(const GridDensity& f, const GridDensity& g) {
  check_inputs(f, g);
  const GridSpec out = output_spec(f.spec(), g.spec());
  const auto a = weighted_samples(f);
  const auto b = weighted_samples(g);
  std::vector<double> h(out.total_nodes(), 0.0);
  if (f.dim() == 1) {
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) h[i + j] += a[i] * b[j];
  } else {
    const GridSpec& sa = f.spec();
    const GridSpec& sb = g.spec();
    for (long i0 = 0; i0 < sa.count[0]; ++i0)
      for (long i1 = 0; i1 < sa.count[1]; ++i1) {
        const double av = a[sa.index(i0, i1)];
        if (av == 0.0) continue;
        for (long j0 = 0; j0 < sb.count[0]; ++j0)
          for (long j1 = 0; j1 < sb.count[1]; ++j1)
            h[out.index(i0 + j0, i1 + j1)] += av * b[sb.index(j0, j1)];
      }
  }
  const double vol = f.spec().cell_volume();
  for (double& v : h) v *= vol;
  return finish(out, std::move(h), f.truncated() || g.truncated(), 0);
}

namespace {

// resample the coarser input onto the finer spacing so convolve's equal
// spacing precondition holds
std::pair<GridDensity, GridDensity> to_common_spacing(GridDensity a,
                                                      GridDensity b) {
  if (a.spec().same_spacing(b.spec())) return {std::move(a), std::move(b)};
  auto refit = [](const GridDensity& src, const GridSpec& like) {
    GridSpec t = src.spec();
    for (int ax = 0; ax < t.dim; ++ax) {
      const double span = src.spec().span(ax);
      t.delta[ax] = like.delta[ax];
      t.count[ax] =
          static_cast<long>(std::ceil(span / t.delta[ax])) + 1;
    }
    if (t.dim == 1) t.count[1] = 1;
    t.validate();
    return resample(src, t);
  };
  const bool a_finer = a.spec().delta[0] <= b.spec().delta[0];
  if (a_finer) return {std::move(a), refit(b, a.spec())};
  GridDensity a2 = refit(a, b.spec());
  return {std::move(a2), std::move(b)};
}

}  // namespace

GridDensity weighted_combine(const GridDensity& f, const GridDensity& g,
                             WeightParameter t) {
  t.validate();
  if (t.t == 1.0) return f;
  if (t.t == 0.0) return g;
  auto [fs, gs] = to_common_spacing(scale_density(f, t.t),
                                    scale_density(g, 1.0 - t.t));
  return convolve(fs, gs);
}

}  // namespace repi
