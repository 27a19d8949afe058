#pragma once

#include "hmb/math.hpp"

namespace hmb {

inline constexpr double kPsnrCap = 99.0;

enum class MetricChannels { Rgb, Luma };

/// 10 log10(1 / MSE) for values in [0,1], capped at kPsnrCap. Throws on resolution mismatch.
double psnr(const Image& a, const Image& b, MetricChannels channels = MetricChannels::Rgb);

/// Mean SSIM over every full 11x11 Gaussian window (sigma 1.5), C1 = 0.01^2, C2 = 0.03^2.
/// RGB mode averages the per-channel indices. Throws on resolution mismatch or when the image
/// is smaller than one window.
double ssim(const Image& a, const Image& b, MetricChannels channels = MetricChannels::Luma);

/// Rounds every channel to the nearest 8-bit level.
Image quantize8(const Image& img);

struct MetricOptions {
    bool quantize = true;
    MetricChannels psnr_channels = MetricChannels::Rgb;
    MetricChannels ssim_channels = MetricChannels::Luma;
};

struct MetricReport {
    double psnr = 0.0;
    double ssim = 0.0;
};

MetricReport compare_images(const Image& a, const Image& b, const MetricOptions& options = {});

}  // namespace hmb
