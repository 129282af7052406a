#include <algorithm>
#include <charconv>

#include "casimir/io.hpp"

namespace casimir::io {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 20.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 50.0;

std::string fixed2(double v) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

std::string short_number(double v) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 4);
    return std::string(buf, res.ptr);
}

} // namespace

std::string trajectory_svg(const Trajectory& traj) {
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed2(kWidth) +
           "\" height=\"" + fixed2(kHeight) + "\" viewBox=\"0 0 " + fixed2(kWidth) + " " +
           fixed2(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    out += "<rect x=\"" + fixed2(kLeft) + "\" y=\"" + fixed2(kTop) + "\" width=\"" +
           fixed2(plot_w) + "\" height=\"" + fixed2(plot_h) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    if (!traj.u.empty()) {
        const double t0 = traj.times.front();
        const double t1 = traj.times.back() > t0 ? traj.times.back() : t0 + 1.0;
        auto [lo_it, hi_it] = std::minmax_element(traj.u.begin(), traj.u.end());
        double lo = *lo_it;
        double hi = *hi_it;
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        }
        const auto px = [&](double t) { return kLeft + (t - t0) / (t1 - t0) * plot_w; };
        const auto py = [&](double u) { return kTop + (hi - u) / (hi - lo) * plot_h; };

        out += "<polyline fill=\"none\" stroke=\"#1f4e9a\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < traj.u.size(); ++i) {
            if (i)
                out += ' ';
            out += fixed2(px(traj.times[i]));
            out += ',';
            out += fixed2(py(traj.u[i]));
        }
        out += "\"/>\n";

        const auto label = [&](double x, double y, const std::string& anchor, const std::string& text) {
            out += "<text x=\"" + fixed2(x) + "\" y=\"" + fixed2(y) +
                   "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"" + anchor +
                   "\">" + text + "</text>\n";
        };
        label(kLeft - 6.0, kTop + 4.0, "end", short_number(hi));
        label(kLeft - 6.0, kTop + plot_h, "end", short_number(lo));
        label(kLeft, kTop + plot_h + 16.0, "middle", short_number(t0));
        label(kLeft + plot_w, kTop + plot_h + 16.0, "middle", short_number(t1));
        label(kLeft + 0.5 * plot_w, kHeight - 8.0, "middle", "t / t*");
        out += "<text x=\"16.00\" y=\"" + fixed2(kTop + 0.5 * plot_h) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
               "transform=\"rotate(-90 16.00 " +
               fixed2(kTop + 0.5 * plot_h) + ")\">(x - x0) / x0</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace casimir::io
