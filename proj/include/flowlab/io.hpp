#pragma once

#include <ostream>
#include <string>

#include "flowlab/format.hpp"
#include "flowlab/iteration.hpp"
#include "flowlab/orbits.hpp"

namespace flowlab {

/// CSV of a scaled-iteration history: n,coord_1,...,coord_k,delta_chordal
/// where delta_chordal is the chordal step from the previous row (0 for the
/// first row).
inline void write_iteration_csv(std::ostream& os, const LimitEstimate& est) {
    const Index k = est.value.dim();
    os << "n";
    for (Index i = 1; i <= k; ++i) os << ",coord_" << i;
    os << ",delta_chordal\n";
    for (std::size_t j = 0; j < est.history.size(); ++j) {
        const auto& [n, p] = est.history[j];
        os << n;
        if (p.is_infinity()) {
            for (Index i = 0; i < k; ++i) os << ",inf";
        } else {
            for (Index i = 0; i < k; ++i) os << ',' << fmt_double(p.coords()[i]);
        }
        const double delta =
            j == 0 ? 0.0 : chordal_distance(est.history[j - 1].second, p);
        os << ',' << fmt_double(delta) << '\n';
    }
}

/// CSV of an orbit trace: z,coord_1,...,coord_k,is_infinity. Rows at the
/// point at infinity carry `inf` coordinates and is_infinity=1.
inline void write_orbit_csv(std::ostream& os, const OrbitTrace& trace) {
    const Index k = trace.base.dim();
    os << "z";
    for (Index i = 1; i <= k; ++i) os << ",coord_" << i;
    os << ",is_infinity\n";
    for (const auto& [z, p] : trace.samples) {
        os << fmt_double(z);
        if (p.is_infinity()) {
            for (Index i = 0; i < k; ++i) os << ",inf";
            os << ",1\n";
        } else {
            for (Index i = 0; i < k; ++i) os << ',' << fmt_double(p.coords()[i]);
            os << ",0\n";
        }
    }
}

/// SVG polyline plot of a 2-D orbit trace. Fixed 800×800 viewport showing
/// [−5,5]²; coordinates rounded to two decimals; points beyond the viewport
/// are clipped; samples at ∞ are omitted and counted in an annotation.
inline void write_orbit_svg(std::ostream& os, const OrbitTrace& trace) {
    if (trace.base.dim() != 2) {
        throw UnsupportedDimension("write_orbit_svg: SVG export is 2-D only");
    }
    auto px = [](double x) { return fmt_fixed((x + 5.0) * 80.0, 2); };
    auto py = [](double y) { return fmt_fixed((5.0 - y) * 80.0, 2); };

    int omitted = 0;
    std::string pts;
    for (const auto& [z, p] : trace.samples) {
        (void)z;
        if (p.is_infinity()) {
            ++omitted;
            continue;
        }
        if (!pts.empty()) pts += ' ';
        pts += px(p.coords()[0]) + "," + py(p.coords()[1]);
    }

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
          "viewBox=\"0 0 800 800\">\n";
    os << "  <defs><clipPath id=\"viewport\"><rect x=\"0\" y=\"0\" width=\"800\" "
          "height=\"800\"/></clipPath></defs>\n";
    os << "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n";
    os << "  <line x1=\"0\" y1=\"400\" x2=\"800\" y2=\"400\" stroke=\"#cccccc\"/>\n";
    os << "  <line x1=\"400\" y1=\"0\" x2=\"400\" y2=\"800\" stroke=\"#cccccc\"/>\n";
    os << "  <g clip-path=\"url(#viewport)\">\n";
    os << "    <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"" << pts
       << "\"/>\n";
    os << "  </g>\n";
    if (trace.base.is_finite()) {
        os << "  <circle cx=\"" << px(trace.base.coords()[0]) << "\" cy=\""
           << py(trace.base.coords()[1]) << "\" r=\"4\" fill=\"#d62728\"/>\n";
    }
    os << "  <text x=\"10\" y=\"20\" font-family=\"monospace\" font-size=\"14\">"
       << "infinity samples omitted: " << omitted << "</text>\n";
    os << "</svg>\n";
}

}  // namespace flowlab
