#include "orbitforge/gallery.hpp"

#include <algorithm>
#include <cmath>

#include "orbitforge/error.hpp"

namespace orbitforge {

namespace {

struct Ex34State {
  std::vector<BigFloat> points;
  SigmaSchedule schedule;
};

Precision checked_precision(Precision needed, const GeneratorParams& params) {
  Precision chosen = params.precision_bits > 0 ? params.precision_bits : needed;
  if (chosen < needed)
    fail(Errc::precision_cap_exceeded,
         "requested precision " + std::to_string(chosen) +
             " below the " + std::to_string(needed) + " bits this prefix needs");
  if (chosen > params.precision_cap)
    fail(Errc::precision_cap_exceeded,
         "prefix needs " + std::to_string(chosen) +
             " bits, above the cap of " + std::to_string(params.precision_cap));
  return chosen;
}

bool integral(double x) { return x == std::floor(x) && std::abs(x) < 9e15; }

// Shared generator for the perturbed-squaring sequence and its schedule.
Ex34State run_ex3_4(const GeneratorParams& params, Precision prec) {
  Ex34State st;
  st.schedule.delta_log2 = params.ex3_4_delta_log2;
  st.schedule.certified = true;

  const BigFloat delta = exp2(BigFloat(params.ex3_4_delta_log2, prec));
  std::vector<long> active;
  double worst_ratio_log2 = -1e300;

  BigFloat z(0.5, prec);
  st.points.push_back(z);
  for (std::size_t n = 0; n + 1 < params.count; ++n) {
    const double log2_z = log(z).to_double() / std::log(2.0);

    // Budget in the log2 domain with a factor-2 headroom, then certify the
    // actual sum below.
    double budget = 0.0;
    for (long m : active) {
      double t = static_cast<double>(m) * static_cast<double>(m) +
                 (static_cast<double>(m) - 2.0) * log2_z;
      budget += std::exp2(t);
    }
    for (long m = 3; m <= 256; ++m) {
      if (std::find(active.begin(), active.end(), m) != active.end()) continue;
      double t = static_cast<double>(m) * static_cast<double>(m) +
                 (static_cast<double>(m) - 2.0) * log2_z;
      if (t < -2.0 * static_cast<double>(prec)) continue;  // numerically absent
      double value = std::exp2(t);
      if (budget + value <= 0.5 * std::exp2(params.ex3_4_delta_log2)) {
        active.push_back(m);
        st.schedule.activation.emplace_back(m, n);
        budget += value;
      }
    }

    BigFloat square = z * z;
    BigFloat perturbation(0.0, prec);
    for (long m : active) {
      perturbation =
          perturbation + BigFloat::pow2(m * m, prec) * pow_int(z, m);
    }
    if (!perturbation.is_zero()) {
      BigFloat ratio = perturbation / square;
      if (!(ratio <= delta)) {
        st.schedule.certified = false;
        fail(Errc::internal, "perturbation certificate failed at step " +
                                 std::to_string(n));
      }
      worst_ratio_log2 = std::max(
          worst_ratio_log2, log(ratio).to_double() / std::log(2.0));
    }
    z = square + perturbation;
    st.points.push_back(z);
  }
  st.schedule.certificate =
      worst_ratio_log2 <= -1e299
          ? "no perturbation fired within the prefix"
          : "worst log2 perturbation ratio " + std::to_string(worst_ratio_log2);
  std::sort(st.schedule.activation.begin(), st.schedule.activation.end());
  return st;
}

}  // namespace

GalleryId gallery_id_from_string(const std::string& name) {
  for (GalleryId id : all_gallery_ids()) {
    if (name == gallery_id_name(id)) return id;
  }
  fail(Errc::parse_error, "unknown gallery id '" + name + "'");
}

const char* gallery_id_name(GalleryId id) {
  switch (id) {
    case GalleryId::Ex3_1: return "Ex3_1";
    case GalleryId::Ex3_2: return "Ex3_2";
    case GalleryId::Ex3_3: return "Ex3_3";
    case GalleryId::Ex3_4: return "Ex3_4";
    case GalleryId::QRClever: return "QRClever";
    case GalleryId::QRNew: return "QRNew";
    case GalleryId::AppendixCounter: return "AppendixCounter";
  }
  return "Ex3_1";
}

std::vector<GalleryId> all_gallery_ids() {
  return {GalleryId::Ex3_1,    GalleryId::Ex3_2, GalleryId::Ex3_3,
          GalleryId::Ex3_4,    GalleryId::QRClever, GalleryId::QRNew,
          GalleryId::AppendixCounter};
}

Precision required_precision(GalleryId id, const GeneratorParams& params) {
  const std::size_t count = params.count;
  double needed = 256;
  switch (id) {
    case GalleryId::Ex3_1:
      if (count >= 3) needed = std::max(needed, std::exp2(static_cast<double>(count - 2)) + 64);
      break;
    case GalleryId::Ex3_2:
      needed = std::max(needed,
                        std::pow(params.ex3_2_base, static_cast<double>(count) + 1.0) + 64);
      break;
    case GalleryId::Ex3_3:
      needed = std::max(needed, 256.0 + static_cast<double>(count));
      break;
    case GalleryId::Ex3_4:
      needed = std::max(1024.0, 4.0 * std::exp2(static_cast<double>(count)) + 256);
      break;
    case GalleryId::QRClever:
      needed = 256;
      break;
    case GalleryId::QRNew: {
      double m_max = static_cast<double>((count == 0 ? 0 : count - 1) / 3);
      needed = std::max(needed, 1.4427 * (m_max + 2.0) * (m_max + 2.0) + 128);
      break;
    }
    case GalleryId::AppendixCounter:
      needed = 256;
      break;
  }
  if (needed > 9e15)
    fail(Errc::precision_cap_exceeded, "prefix length demands absurd precision");
  return checked_precision(static_cast<Precision>(needed), params);
}

OrbitSequence generate(GalleryId id, const GeneratorParams& params) {
  if (params.count < 2)
    fail(Errc::sequence_too_short, "gallery prefixes need count >= 2");
  const Precision prec = required_precision(id, params);

  OrbitSequence seq;
  seq.precision_bits = prec;
  seq.tail.kind = TailInfo::Kind::TendsToZero;
  const BigFloat zero_im(0.0, prec);
  auto push_real = [&](const BigFloat& x) {
    seq.points.emplace_back(x, zero_im);
  };

  switch (id) {
    case GalleryId::Ex3_1: {
      push_real(BigFloat(1.0, prec));
      BigFloat z(0.5, prec);
      push_real(z);
      for (std::size_t n = 2; n < params.count; ++n) {
        z = z * z;
        push_real(z);
      }
      break;
    }
    case GalleryId::Ex3_2: {
      const double b = params.ex3_2_base;
      if (!(b > 1.0)) fail(Errc::out_of_range, "offset base must exceed 1");
      for (std::size_t n = 0; n < params.count; ++n) {
        BigFloat main = BigFloat::pow2(-(1L << n), prec);
        double e = std::pow(b, static_cast<double>(n) + 2.0);
        BigFloat offset = integral(e)
                              ? BigFloat::pow2(-static_cast<long>(e), prec)
                              : exp2(-BigFloat(e, prec));
        push_real(main + offset);
      }
      break;
    }
    case GalleryId::Ex3_3: {
      const double a = params.ex3_3_a;
      if (!(a > 1.0) || !(a < 2.0))
        fail(Errc::out_of_range, "exponent base a must lie in (1, 2)");
      BigFloat power(1.0, prec);
      BigFloat base(a, prec);
      for (std::size_t n = 0; n < params.count; ++n) {
        push_real(exp2(-power));
        power = power * base;
      }
      break;
    }
    case GalleryId::Ex3_4: {
      Ex34State st = run_ex3_4(params, prec);
      for (const auto& x : st.points) push_real(x);
      break;
    }
    case GalleryId::QRClever: {
      const BigFloat eps(params.qrclever_eps, prec);
      const BigFloat s(params.qrclever_s, prec);
      if (!(params.qrclever_eps > 0.0))
        fail(Errc::out_of_range, "eps must be positive");
      if (!(params.qrclever_s > 0.0) || !(params.qrclever_s < 1.0))
        fail(Errc::out_of_range, "s must lie in (0, 1)");
      if (!(params.qrclever_z0 > 0.0) ||
          !(params.qrclever_z0 < params.qrclever_s))
        fail(Errc::out_of_range, "z0 must lie in (0, s)");
      BigComplex z(BigFloat(params.qrclever_z0, prec), zero_im);
      seq.points.push_back(z);
      for (std::size_t n = 1; n < params.count; ++n) {
        z = qrclever_apply(z, eps, s);
        seq.points.push_back(z);
      }
      break;
    }
    case GalleryId::QRNew: {
      for (std::size_t i = 0; i < params.count; ++i) {
        long m = static_cast<long>(i / 3);
        BigFloat big = exp(BigFloat(-(m + 2), prec));
        switch (i % 3) {
          case 0:
            push_real(big);
            break;
          case 1:
            push_real(big - exp(BigFloat(-(m + 2) * (m + 2), prec)));
            break;
          default:
            push_real(-(big / BigFloat(2.0, prec)));
            break;
        }
      }
      break;
    }
    case GalleryId::AppendixCounter: {
      BigFloat x(0.5, prec);
      push_real(x);
      for (std::size_t n = 1; n < params.count; ++n) {
        x = (n % 2 == 0) ? x / BigFloat(2.0, prec) : x * x;
        push_real(x);
      }
      break;
    }
  }
  seq.validate();
  return seq;
}

BigComplex qrclever_apply(const BigComplex& z, const BigFloat& eps,
                          const BigFloat& s) {
  const Precision prec = std::max({z.precision(), eps.precision(), s.precision()});
  if (z.is_zero()) return BigComplex::zero(prec);

  const BigFloat pi = BigFloat::pi(prec);
  const BigFloat two(2.0, prec);
  BigFloat m = z.abs();
  BigFloat y = z.arg();
  if (y.sign() < 0) y = y + two * pi;  // argument taken in [0, 2pi)

  BigFloat t = (y <= pi / two) ? two * y + eps
                               : two * (y + pi) / BigFloat(3.0, prec) + eps;
  BigFloat scale = (m <= s) ? m * (BigFloat(1.0, prec) - m)
                            : m * (BigFloat(1.0, prec) - s);
  BigFloat sn, cn;
  sin_cos(sn, cn, t);
  return BigComplex(scale * cn, scale * sn);
}

nlohmann::json SigmaSchedule::to_json() const {
  nlohmann::json j;
  nlohmann::json acts = nlohmann::json::array();
  for (auto [m, n] : activation) acts.push_back({{"m", m}, {"N_m", n}});
  j["activation"] = acts;
  j["delta_log2"] = delta_log2;
  j["certified"] = certified;
  j["certificate"] = certificate;
  return j;
}

SigmaSchedule ex3_4_sigma_schedule(const GeneratorParams& params) {
  const Precision prec = required_precision(GalleryId::Ex3_4, params);
  return run_ex3_4(params, prec).schedule;
}

}  // namespace orbitforge
