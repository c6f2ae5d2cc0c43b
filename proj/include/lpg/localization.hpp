#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lpg/errors.hpp"
#include "lpg/rng.hpp"

namespace lpg {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 v) { return {c * v.x, c * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

struct Rect {
    double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    bool contains(Vec2 p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
};

/// Log-distance path loss with Gaussian (in dB) shadowing:
///   rss_i = p0_dbm - 10 * exponents[i] * log10(d_i / d0_m) + noise.
struct PathLossModel {
    double p0_dbm = 0.0;            // reference power measured at d0_m
    double d0_m = 1.0;
    std::vector<double> exponents;  // per-station path loss exponent
    double noise_std_db = 0.0;      // shadowing sigma for a single packet
};

/// Everything needed to simulate one passive-localization deployment.
/// Averaging packets_per_sample packets shrinks the effective shadowing
/// noise by sqrt(packets_per_sample).
struct LocalizationScene {
    std::vector<Vec2> stations;
    Rect area;                  // where users may be, and the clamp reference
    PathLossModel model;
    int packets_per_sample = 1;

    void validate() const {
        if (stations.size() < 3)
            throw DegenerateGeometryError("at least 3 stations are required, got " +
                                          std::to_string(stations.size()));
        if (model.exponents.size() != stations.size())
            throw std::invalid_argument("path loss exponents (" +
                                        std::to_string(model.exponents.size()) +
                                        ") must match station count (" +
                                        std::to_string(stations.size()) + ")");
        for (double n : model.exponents)
            if (!(n > 0.0))
                throw std::invalid_argument("path loss exponents must be > 0");
        if (!(model.d0_m > 0.0))
            throw std::invalid_argument("d0_m must be > 0");
        if (!(model.noise_std_db >= 0.0))
            throw std::invalid_argument("noise_std_db must be >= 0");
        if (packets_per_sample < 1)
            throw std::invalid_argument("packets_per_sample must be >= 1");
        if (!(area.width() > 0.0 && area.height() > 0.0))
            throw std::invalid_argument("area must have positive width and height");
        // collinear stations leave the position underdetermined along a line
        double scale = 0.0;
        for (std::size_t i = 0; i < stations.size(); ++i)
            for (std::size_t j = i + 1; j < stations.size(); ++j)
                scale = std::max(scale, distance(stations[i], stations[j]));
        double max_area = 0.0;
        for (std::size_t j = 1; j < stations.size(); ++j)
            for (std::size_t k = j + 1; k < stations.size(); ++k) {
                const Vec2 a = stations[j] - stations[0];
                const Vec2 b = stations[k] - stations[0];
                max_area = std::max(max_area, std::fabs(a.x * b.y - a.y * b.x));
            }
        if (!(max_area > 1e-9 * scale * scale))
            throw DegenerateGeometryError("stations are collinear or coincident");
    }
};

// draw kinds per sample substream
inline constexpr std::uint64_t kDrawLocation = 0;
inline constexpr std::uint64_t kDrawShadowing = 1;

/// Noisy per-station RSS readings (dBm) for a user at true_loc, already
/// averaged over the scene's packet count. Shadowing draws come from the
/// stream's kDrawShadowing counters, indexed by station.
inline std::vector<double> generate_rss(const LocalizationScene& scene, Vec2 true_loc,
                                        const RngStream& stream) {
    const double sigma =
        scene.model.noise_std_db / std::sqrt(static_cast<double>(scene.packets_per_sample));
    std::vector<double> rss;
    rss.reserve(scene.stations.size());
    for (std::size_t i = 0; i < scene.stations.size(); ++i) {
        const double d = distance(true_loc, scene.stations[i]);
        if (!(d > 1e-12))
            throw DegenerateGeometryError("user position coincides with station " +
                                          std::to_string(i));
        double reading = scene.model.p0_dbm -
                         10.0 * scene.model.exponents[i] * std::log10(d / scene.model.d0_m);
        if (sigma > 0.0) reading += sigma * stream.normal(kDrawShadowing, i);
        rss.push_back(reading);
    }
    return rss;
}

/// Distance estimate implied by one noiseless reading (path loss inverse).
inline double invert_path_loss(double rss_dbm, double exponent, const PathLossModel& model) {
    return model.d0_m * std::pow(10.0, (model.p0_dbm - rss_dbm) / (10.0 * exponent));
}

namespace detail {

inline Vec2 clamp_to_inflated(Vec2 p, const Rect& area) {
    // clamp box is the area grown to 3x its size about its center
    const double cx = 0.5 * (area.xmin + area.xmax);
    const double cy = 0.5 * (area.ymin + area.ymax);
    const double hw = 1.5 * area.width();
    const double hh = 1.5 * area.height();
    return {std::clamp(p.x, cx - hw, cx + hw), std::clamp(p.y, cy - hh, cy + hh)};
}

}  // namespace detail

/// Position estimate from one RSS vector.
///
/// Readings are inverted to distance estimates, seeded with the linear
/// least-squares solution of all pairwise squared-distance differences, then
/// refined by damped Gauss-Newton on the range residuals (at most 100
/// iterations, stopping when an accepted step moves less than 1e-9). The
/// result is clamped to the 3x-inflated area box.
inline Vec2 multilaterate(const LocalizationScene& scene, std::span<const double> rss_dbm) {
    const auto& st = scene.stations;
    if (rss_dbm.size() != st.size())
        throw std::invalid_argument("multilaterate: got " + std::to_string(rss_dbm.size()) +
                                    " readings for " + std::to_string(st.size()) +
                                    " stations");
    for (double r : rss_dbm)
        if (!std::isfinite(r))
            throw std::invalid_argument("multilaterate: non-finite RSS reading");

    std::vector<double> dist;
    dist.reserve(st.size());
    for (std::size_t i = 0; i < st.size(); ++i)
        dist.push_back(invert_path_loss(rss_dbm[i], scene.model.exponents[i], scene.model));

    // linear init: subtracting |x - s_i|^2 = d_i^2 pairwise cancels |x|^2,
    // leaving an overdetermined linear system solved by normal equations
    double m00 = 0.0, m01 = 0.0, m11 = 0.0, v0 = 0.0, v1 = 0.0;
    for (std::size_t i = 0; i < st.size(); ++i)
        for (std::size_t j = i + 1; j < st.size(); ++j) {
            const double ax = 2.0 * (st[j].x - st[i].x);
            const double ay = 2.0 * (st[j].y - st[i].y);
            const double b = (dist[i] * dist[i] - dist[j] * dist[j]) +
                             dot(st[j], st[j]) - dot(st[i], st[i]);
            m00 += ax * ax;
            m01 += ax * ay;
            m11 += ay * ay;
            v0 += ax * b;
            v1 += ay * b;
        }
    const double det = m00 * m11 - m01 * m01;
    const double mscale = m00 + m11;
    if (!(det > 1e-12 * mscale * mscale))
        throw DegenerateGeometryError("multilaterate: station geometry is rank-deficient");
    Vec2 x{(m11 * v0 - m01 * v1) / det, (m00 * v1 - m01 * v0) / det};

    const auto cost = [&](Vec2 p) {
        double c = 0.0;
        for (std::size_t i = 0; i < st.size(); ++i) {
            const double r = distance(p, st[i]) - dist[i];
            c += r * r;
        }
        return c;
    };

    double f = cost(x);
    double lambda = 1e-6;
    for (int iter = 0; iter < 100; ++iter) {
        double h00 = 0.0, h01 = 0.0, h11 = 0.0, g0 = 0.0, g1 = 0.0;
        for (std::size_t i = 0; i < st.size(); ++i) {
            const double d = std::max(distance(x, st[i]), 1e-12);
            const double ux = (x.x - st[i].x) / d;
            const double uy = (x.y - st[i].y) / d;
            const double r = d - dist[i];
            h00 += ux * ux;
            h01 += ux * uy;
            h11 += uy * uy;
            g0 += r * ux;
            g1 += r * uy;
        }
        const double hd = (h00 + lambda) * (h11 + lambda) - h01 * h01;
        if (!(hd > 0.0)) {
            lambda = std::max(lambda * 10.0, 1e-6);
            continue;
        }
        const Vec2 step{-((h11 + lambda) * g0 - h01 * g1) / hd,
                        -((h00 + lambda) * g1 - h01 * g0) / hd};
        const Vec2 trial = x + step;
        const double ft = cost(trial);
        if (ft <= f) {
            x = trial;
            f = ft;
            lambda = std::max(lambda * 0.3, 1e-12);
            if (norm(step) < 1e-9) break;
        } else {
            lambda *= 10.0;
            if (lambda > 1e12) break;
        }
    }

    return detail::clamp_to_inflated(x, scene.area);
}

struct LocalizationSample {
    Vec2 true_loc;
    Vec2 est_loc;
    double error = 0.0;           // Euclidean distance between the two
    std::vector<double> rss_dbm;
};

/// One Monte-Carlo trial: place a user uniformly in the area, synthesize
/// RSS, estimate the position. Pure function of (scene, seed, sample_index),
/// which is what makes parallel and sequential runs agree bit for bit.
inline LocalizationSample simulate_sample(const LocalizationScene& scene,
                                          std::uint64_t seed, std::uint64_t sample_index) {
    const RngStream stream(seed, sample_index);
    const Vec2 loc{scene.area.xmin + stream.uniform(kDrawLocation, 0) * scene.area.width(),
                   scene.area.ymin + stream.uniform(kDrawLocation, 1) * scene.area.height()};
    LocalizationSample sample;
    sample.true_loc = loc;
    sample.rss_dbm = generate_rss(scene, loc, stream);
    sample.est_loc = multilaterate(scene, sample.rss_dbm);
    sample.error = distance(sample.true_loc, sample.est_loc);
    return sample;
}

struct ErrorEstimate {
    double mean_error = 0.0;  // the game's l-hat for this deployment
    double std_error = 0.0;   // sample standard deviation (n - 1)
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

/// Monte-Carlo estimate of the expected localization error. If samples_out
/// is non-null, every per-sample record is appended to it.
inline ErrorEstimate estimate_error(const LocalizationScene& scene, std::size_t n_samples,
                                    std::uint64_t seed,
                                    std::vector<LocalizationSample>* samples_out = nullptr) {
    scene.validate();
    if (n_samples == 0)
        throw std::invalid_argument("estimate_error: n_samples must be >= 1");
    std::vector<double> errors;
    errors.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        auto sample = simulate_sample(scene, seed, i);
        errors.push_back(sample.error);
        if (samples_out) samples_out->push_back(std::move(sample));
    }
    double mean = 0.0;
    for (double e : errors) mean += e;
    mean /= static_cast<double>(n_samples);
    double var = 0.0;
    if (n_samples > 1) {
        for (double e : errors) var += (e - mean) * (e - mean);
        var /= static_cast<double>(n_samples - 1);
    }
    return {mean, std::sqrt(var), n_samples, seed};
}

}  // namespace lpg
