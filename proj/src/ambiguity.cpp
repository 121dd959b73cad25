#include "mcwf/kpi.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace mcwf {

namespace {

double floor_db(double v, double scale)
{
    if (!(v > 0)) return kDbFloor;
    return std::max(kDbFloor, scale * std::log10(v));
}

// Column of products a[n] b*[n - lag] for one lag.
CVector lag_product(const CVector& a, const CVector& b, Eigen::Index lag, AfConvention conv)
{
    const Eigen::Index len = a.size();
    CVector p = CVector::Zero(len);
    for (Eigen::Index n = 0; n < len; ++n) {
        Eigen::Index m = n - lag;
        if (conv == AfConvention::Cyclic)
            m = ((m % len) + len) % len;
        else if (m < 0 || m >= len)
            continue;
        p(n) = a(n) * std::conj(b(m));
    }
    return p;
}

}  // namespace

std::string to_string(AfConvention c) { return c == AfConvention::Cyclic ? "cyclic" : "aperiodic"; }

AfConvention parse_af_convention(const std::string& name)
{
    std::string u = name;
    std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    if (u == "aperiodic") return AfConvention::Aperiodic;
    if (u == "cyclic" || u == "periodic") return AfConvention::Cyclic;
    throw LookupError("unknown AF convention '" + name + "'");
}

cdouble ambiguity(const CVector& a, const CVector& b, Eigen::Index lag, double nu, AfConvention conv)
{
    if (a.size() == 0 || a.size() != b.size()) throw ShapeError("ambiguity: signals must be nonempty and equal length");
    const CVector p = lag_product(a, b, lag, conv);
    cdouble acc(0.0, 0.0);
    for (Eigen::Index n = 0; n < p.size(); ++n)
        acc += p(n) * std::polar(1.0, -2.0 * kPi * nu * double(n));
    return acc;
}

AfGrid ambiguity_grid(const CVector& a, const CVector& b, const std::vector<Eigen::Index>& lags,
                      const std::vector<double>& nus, AfConvention conv, double fs)
{
    if (lags.empty() || nus.empty()) throw ShapeError("ambiguity_grid: empty grid");
    if (a.size() == 0 || a.size() != b.size()) throw ShapeError("ambiguity_grid: signals must be nonempty and equal length");
    const Eigen::Index len = a.size();
    for (std::size_t i = 1; i < lags.size(); ++i)
        if (lags[i] <= lags[i - 1]) throw DomainError("ambiguity_grid: delay axis must increase");
    for (std::size_t i = 1; i < nus.size(); ++i)
        if (nus[i] <= nus[i - 1]) throw DomainError("ambiguity_grid: Doppler axis must increase");
    if (std::abs(lags.front()) >= len || std::abs(lags.back()) >= len)
        throw DomainError("ambiguity_grid: delays exceed the frame duration");

    CMatrix prod(Eigen::Index(lags.size()), len);
    for (std::size_t i = 0; i < lags.size(); ++i) prod.row(Eigen::Index(i)) = lag_product(a, b, lags[i], conv).transpose();
    CMatrix kernel(len, Eigen::Index(nus.size()));
    for (Eigen::Index n = 0; n < len; ++n)
        for (std::size_t j = 0; j < nus.size(); ++j)
            kernel(n, Eigen::Index(j)) = std::polar(1.0, -2.0 * kPi * nus[j] * double(n));

    AfGrid g;
    g.convention = conv;
    g.magnitude = (prod * kernel).cwiseAbs();
    g.peak_raw = g.magnitude.maxCoeff();
    if (g.peak_raw > 0) g.magnitude /= g.peak_raw;
    for (auto l : lags) {
        g.delay_s.push_back(double(l) / fs);
        g.delay_norm.push_back(double(l) / double(len));
    }
    for (double nu : nus) {
        g.doppler_hz.push_back(nu * fs);
        g.doppler_norm.push_back(nu);
    }
    return g;
}

CutMetrics af_cut_metrics(const RVector& cut, double spacing)
{
    const Eigen::Index n = cut.size();
    if (n == 0) throw ShapeError("af_cut_metrics: empty cut");
    Eigen::Index p = 0;
    const double peak = cut.maxCoeff(&p);
    if (!(peak > 0)) throw DomainError("af_cut_metrics: cut is identically zero");

    CutMetrics m;
    Eigen::Index hi = p;
    while (hi + 1 < n && cut(hi + 1) < cut(hi)) ++hi;
    Eigen::Index lo = p;
    while (lo > 0 && cut(lo - 1) < cut(lo)) --lo;
    m.mainlobe_lo = lo;
    m.mainlobe_hi = hi;

    const double thr = peak / std::sqrt(2.0);
    double xr = double(n - 1);
    for (Eigen::Index i = p + 1; i < n; ++i)
        if (cut(i) < thr) {
            xr = double(i - 1) + (cut(i - 1) - thr) / (cut(i - 1) - cut(i));
            break;
        }
    double xl = 0.0;
    for (Eigen::Index i = p - 1; i >= 0; --i)
        if (cut(i) < thr) {
            xl = double(i + 1) - (cut(i + 1) - thr) / (cut(i + 1) - cut(i));
            break;
        }
    m.width_3db = (xr - xl) * spacing;

    double main_energy = 0.0, side_energy = 0.0, side_peak = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v = cut(i);
        if (i >= lo && i <= hi) {
            main_energy += v * v;
        } else {
            side_energy += v * v;
            side_peak = std::max(side_peak, v);
        }
    }
    if (lo == 0 && hi == n - 1) {
        m.no_null = true;
        m.pslr_db = 0.0;
        m.islr_db = kDbFloor;
        return m;
    }
    m.pslr_db = floor_db(side_peak / peak, 20.0);
    m.islr_db = floor_db(side_energy / main_energy, 10.0);
    return m;
}

AfMetrics af_metrics(const CVector& s, AfConvention conv, int doppler_oversampling)
{
    const Eigen::Index len = s.size();
    if (len == 0) throw ShapeError("af_metrics: empty signal");
    if (doppler_oversampling < 1) throw DomainError("af_metrics: oversampling must be >= 1");

    Eigen::Index first = -(len - 1), last = len - 1;
    if (conv == AfConvention::Cyclic) {
        first = -(len / 2);
        last = len - 1 - len / 2;
    }
    RVector delay_cut(last - first + 1);
    for (Eigen::Index l = first; l <= last; ++l) delay_cut(l - first) = std::abs(ambiguity(s, s, l, 0.0, conv));

    const Eigen::Index bins = len * doppler_oversampling;
    const RVector power = s.cwiseAbs2();
    RVector doppler_cut(bins);
    for (Eigen::Index j = 0; j < bins; ++j) {
        const double nu = -0.5 + double(j) / double(bins);
        cdouble acc(0.0, 0.0);
        for (Eigen::Index n = 0; n < len; ++n) acc += power(n) * std::polar(1.0, -2.0 * kPi * nu * double(n));
        doppler_cut(j) = std::abs(acc);
    }

    const CutMetrics dc = af_cut_metrics(delay_cut, 1.0 / double(len));
    const CutMetrics fc = af_cut_metrics(doppler_cut, 1.0 / double(bins));
    AfMetrics m;
    m.convention = conv;
    m.delay_width = dc.width_3db;
    m.pslr_delay = dc.pslr_db;
    m.islr_delay = dc.islr_db;
    m.delay_no_null = dc.no_null;
    m.doppler_width = fc.width_3db;
    m.pslr_doppler = fc.pslr_db;
    m.islr_doppler = fc.islr_db;
    m.doppler_no_null = fc.no_null;
    return m;
}

}  // namespace mcwf
