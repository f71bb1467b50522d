// Copyright 2026 The eeginception Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eeginception/butterworth.hpp"

#include <cmath>
#include <sstream>

namespace eeginc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SosFilter design_butterworth_highpass(int order, double cutoff_hz,
                                      double fs_hz) {
  if (order < 2 || order % 2 != 0)
    throw ConfigError("butterworth: order must be even and >= 2");
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < fs_hz / 2.0))
    throw ConfigError("butterworth: cutoff must lie in (0, Nyquist)");

  SosFilter f;
  f.order = order;
  f.cutoff_hz = cutoff_hz;
  f.sample_rate_hz = fs_hz;

  // Prewarp so the bilinear transform lands the -3 dB point exactly on
  // cutoff_hz.
  const double warped = 2.0 * fs_hz * std::tan(kPi * cutoff_hz / fs_hz);
  const double fs2 = 2.0 * fs_hz;

  // Left-half-plane Butterworth prototype poles come in conjugate pairs for
  // even order; one pair per section.
  for (int k = 0; k < order / 2; ++k) {
    const double theta =
        kPi * (2.0 * (k + 1) + order - 1.0) / (2.0 * order);
    const std::complex<double> proto(std::cos(theta), std::sin(theta));
    // Low-pass -> high-pass: s -> warped / s.
    const std::complex<double> s_pole = warped / proto;
    // Bilinear: z = (2 fs + s) / (2 fs - s). The n zeros at s = 0 land on
    // z = +1.
    const std::complex<double> z_pole = (fs2 + s_pole) / (fs2 - s_pole);

    Biquad bq;
    bq.a1 = -2.0 * z_pole.real();
    bq.a2 = std::norm(z_pole);
    // Zeros at z = 1, scaled so this section passes Nyquist (z = -1) with
    // unit gain: |(-1) - 1|^2 = 4 in the numerator.
    const double gain = std::norm(std::complex<double>(-1.0) - z_pole) / 4.0;
    bq.b0 = gain;
    bq.b1 = -2.0 * gain;
    bq.b2 = gain;
    f.sections.push_back(bq);
  }
  return f;
}

std::complex<double> frequency_response(const SosFilter& filter, double hz) {
  const std::complex<double> z =
      std::polar(1.0, 2.0 * kPi * hz / filter.sample_rate_hz);
  const std::complex<double> zi = 1.0 / z;
  std::complex<double> h(1.0, 0.0);
  for (const auto& s : filter.sections) {
    h *= (s.b0 + s.b1 * zi + s.b2 * zi * zi) /
         (1.0 + s.a1 * zi + s.a2 * zi * zi);
  }
  return h;
}

VecX<double> sos_filter(const SosFilter& filter, const VecX<double>& signal) {
  if (!signal.allFinite())
    throw NumericError("sos_filter: non-finite input sample");
  VecX<double> y = signal;
  for (const auto& s : filter.sections) {
    double w1 = 0.0, w2 = 0.0;  // DF2T state
    for (Index n = 0; n < y.size(); ++n) {
      const double x = y(n);
      const double out = s.b0 * x + w1;
      w1 = s.b1 * x - s.a1 * out + w2;
      w2 = s.b2 * x - s.a2 * out;
      y(n) = out;
    }
  }
  return y;
}

VecX<double> sos_filter_zero_phase(const SosFilter& filter,
                                   const VecX<double>& signal) {
  VecX<double> y = sos_filter(filter, signal);
  y.reverseInPlace();
  y = sos_filter(filter, y);
  y.reverseInPlace();
  return y;
}

MatX<double> sos_filter_channels(const SosFilter& filter,
                                 const MatX<double>& signal, bool zero_phase) {
  MatX<double> out(signal.rows(), signal.cols());
  for (Index c = 0; c < signal.rows(); ++c) {
    VecX<double> row = signal.row(c).transpose();
    VecX<double> fil =
        zero_phase ? sos_filter_zero_phase(filter, row) : sos_filter(filter, row);
    out.row(c) = fil.transpose();
  }
  return out;
}

std::string export_coefficients(const SosFilter& filter) {
  std::ostringstream os;
  os.precision(17);
  os << "# butterworth highpass order " << filter.order << " cutoff_hz "
     << filter.cutoff_hz << " fs_hz " << filter.sample_rate_hz << "\n";
  os << "# b0 b1 b2 a1 a2 (a0 = 1)\n";
  for (const auto& s : filter.sections) {
    os << s.b0 << " " << s.b1 << " " << s.b2 << " " << s.a1 << " " << s.a2
       << "\n";
  }
  return os.str();
}

}  // namespace eeginc
