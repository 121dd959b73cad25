#include "mcwf/waveforms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace mcwf {

namespace {

struct SchemeInfo {
    Scheme scheme;
    const char* name;
    const char* domain;
};

constexpr SchemeInfo kSchemes[] = {
    {Scheme::SCM, "SCM", "time"},
    {Scheme::OFDM, "OFDM", "frequency"},
    {Scheme::DFTsOFDM, "DFT-s-OFDM", "frequency"},
    {Scheme::FrFTOFDM, "FrFT-OFDM", "fractional-frequency"},
    {Scheme::OCDM, "OCDM", "chirp"},
    {Scheme::IFDM, "IFDM", "interleave-frequency"},
    {Scheme::AFDM, "AFDM", "DAFT"},
    {Scheme::FBMC, "FBMC", "time-frequency"},
    {Scheme::MCOTFS, "MC-OTFS", "delay-Doppler"},
    {Scheme::ZAKOTFS, "ZAK-OTFS", "delay-Doppler"},
    {Scheme::ODDM, "ODDM", "delay-Doppler"},
    {Scheme::OTSM, "OTSM", "delay-sequency"},
};

const SchemeInfo& info(Scheme s)
{
    for (const auto& i : kSchemes)
        if (i.scheme == s) return i;
    throw LookupError("unknown scheme");
}

std::string upper(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::toupper(c)); });
    return s;
}

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

// Localized block around DC: data bin k sits at signed frequency k (k < ceil(M/2)) or k - M.
CMatrix dfts_mapping(Index width, Index m, Index offset)
{
    CMatrix p = CMatrix::Zero(width, m);
    const Index half = m - m / 2;
    for (Index k = 0; k < m; ++k) {
        Index f = (k < half ? k : k - m) + offset;
        Index idx = ((f % width) + width) % width;
        p(idx, k) = 1.0;
    }
    return p;
}

void require_geometry(const FrameGeometry& g)
{
    if (g.M < 1 || g.N < 1) throw InvalidSize("frame geometry: M and N must be >= 1");
    if (g.prefix_len < 0) throw InvalidSize("frame geometry: prefix length must be >= 0");
    if (!(g.subcarrier_spacing_hz > 0)) throw ConfigError("frame geometry: subcarrier spacing must be positive");
}

void require_1d(Scheme s, const FrameGeometry& g)
{
    if (g.N != 1) throw ConfigError(scheme_name(s) + " is one-dimensional; N must be 1");
}

CMatrix oddm_ddop_matrix(const FrameGeometry& g, const WaveformParams& p, Index& rows)
{
    const Index m = g.M, n = g.N;
    const int os = p.oddm_oversampling;
    SampledPulse pulse = ddop_pulse(m, n, p.oddm_q, p.oddm_rolloff, os);
    const Index pulse_len = static_cast<Index>(pulse.samples.size());
    // grid covers [-Q T/M, N T + (Q-1) T/M]
    rows = (m * n + 2 * p.oddm_q - 1) * os + 1;
    const double sqrt_dt = std::sqrt(pulse.dt);
    CMatrix a = CMatrix::Zero(rows, m * n);
    for (Index l = 0; l < m; ++l) {
        const Index shift = l * os;  // pulse start aligns with grid start for l = 0
        for (Index k = 0; k < n; ++k) {
            const Index col = l * n + k;
            for (Index i = 0; i < pulse_len; ++i) {
                const Index row = shift + i;
                if (row >= rows) break;
                // t - l T/M measured in units of T
                const double tau = pulse.t0 + double(i) * pulse.dt;
                const double ph = 2.0 * kPi * double(k) * tau / double(n);
                a(row, col) = sqrt_dt * pulse.samples[i] * cdouble(std::cos(ph), std::sin(ph));
            }
        }
    }
    return a;
}

}  // namespace

std::string scheme_name(Scheme s) { return info(s).name; }

Scheme parse_scheme(const std::string& name)
{
    const std::string u = upper(name);
    if (u == "OTFS") return Scheme::MCOTFS;
    if (u == "ZAK" || u == "ZAKOTFS") return Scheme::ZAKOTFS;
    if (u == "DFTS-OFDM" || u == "DFTSOFDM" || u == "SC-FDMA") return Scheme::DFTsOFDM;
    if (u == "FRFT" || u == "FRFTOFDM") return Scheme::FrFTOFDM;
    for (const auto& i : kSchemes)
        if (upper(i.name) == u) return i.scheme;
    throw LookupError("unknown waveform '" + name + "'");
}

std::vector<Scheme> all_schemes()
{
    std::vector<Scheme> out;
    for (const auto& i : kSchemes) out.push_back(i.scheme);
    return out;
}

bool is_two_dimensional(Scheme s)
{
    switch (s) {
    case Scheme::FBMC:
    case Scheme::MCOTFS:
    case Scheme::ZAKOTFS:
    case Scheme::ODDM:
    case Scheme::OTSM:
        return true;
    default:
        return false;
    }
}

double afdm_default_c1(Index m, double max_normalized_doppler)
{
    const double alpha = std::floor(std::abs(max_normalized_doppler));
    return (2.0 * alpha + 1.0) / (2.0 * double(m));
}

CVector WaveformBundle::modulate(const CVector& x) const
{
    if (x.size() != tx.cols()) throw ShapeError(scheme_name(scheme) + ": symbol vector length mismatch");
    return tx * x;
}

CVector WaveformBundle::demodulate(const CVector& core) const
{
    if (core.size() != rx.cols()) throw ShapeError(scheme_name(scheme) + ": core length mismatch");
    return rx * core;
}

CVector WaveformBundle::transmit(const CVector& x) const { return add_prefix(modulate(x), prefix, prefix_length()); }

CVector WaveformBundle::receive(const CVector& frame) const
{
    return demodulate(remove_prefix(frame, prefix_length()));
}

CMatrix add_prefix_rows(const CMatrix& core, const PrefixRule& rule, Index lp)
{
    const Index len = core.rows();
    if (lp < 0 || lp > len) throw ConfigError("prefix length exceeds core length");
    if (rule.kind == PrefixKind::None || lp == 0) return core;
    CMatrix out(len + lp, core.cols());
    out.bottomRows(len) = core;
    for (Index i = 0; i < lp; ++i) {
        const Index l = i - lp;  // -Lp .. -1
        cdouble ph(1.0, 0.0);
        if (rule.kind == PrefixKind::CPP && rule.c1 != 0.0) {
            // e^{-j2pi c1 (M^2 + 2 M l)}, evaluated in long double
            long double arg = -2.0L * 3.14159265358979323846L * static_cast<long double>(rule.c1) *
                              (static_cast<long double>(len) * len + 2.0L * len * l);
            ph = cdouble(double(std::cos(arg)), double(std::sin(arg)));
        }
        out.row(i) = ph * core.row(len + l);
    }
    return out;
}

CVector add_prefix(const CVector& core, const PrefixRule& rule, Index lp)
{
    return add_prefix_rows(core, rule, lp).col(0);
}

CVector remove_prefix(const CVector& frame, Index lp)
{
    if (lp < 0 || lp > frame.size()) throw ConfigError("prefix length exceeds frame length");
    return frame.tail(frame.size() - lp);
}

WaveformBundle build_waveform(Scheme scheme, const FrameGeometry& g, const WaveformParams& p)
{
    require_geometry(g);
    WaveformBundle b;
    b.scheme = scheme;
    b.geometry = g;
    b.domain = info(scheme).domain;
    b.sample_rate_hz = g.sample_rate_hz();
    b.prefix = {PrefixKind::CP, 0.0};
    const Index m = g.M, n = g.N;

    switch (scheme) {
    case Scheme::SCM:
        require_1d(scheme, g);
        b.tx = identity(m);
        break;
    case Scheme::OFDM:
        require_1d(scheme, g);
        b.tx = dft_matrix(m).adjoint();
        break;
    case Scheme::DFTsOFDM: {
        require_1d(scheme, g);
        const Index width = p.dfts_width == 0 ? m : p.dfts_width;
        if (width < m) throw ConfigError("DFT-s-OFDM: IDFT width must be >= M");
        b.tx = dft_matrix(width).adjoint() * dfts_mapping(width, m, p.dfts_offset) * dft_matrix(m);
        b.sample_rate_hz = double(width) * g.subcarrier_spacing_hz;
        break;
    }
    case Scheme::FrFTOFDM:
        require_1d(scheme, g);
        b.tx = dfrft_matrix(m, p.frft_order).adjoint();
        break;
    case Scheme::OCDM:
        require_1d(scheme, g);
        b.tx = dfnt_matrix(m).phi.adjoint();
        break;
    case Scheme::IFDM:
        require_1d(scheme, g);
        b.tx = permutation_matrix(random_interleaver(m, p.ifdm_seed)) * dft_matrix(m).adjoint();
        break;
    case Scheme::AFDM: {
        require_1d(scheme, g);
        const double c1 = std::isnan(p.afdm_c1) ? afdm_default_c1(m, p.afdm_max_doppler) : p.afdm_c1;
        b.c1 = c1;
        b.c2 = p.afdm_c2;
        b.tx = daft_matrix(m, c1, p.afdm_c2).adjoint();
        b.prefix = {PrefixKind::CPP, c1};
        break;
    }
    case Scheme::FBMC: {
        FbmcSynthesis syn = fbmc_synthesis(g, p.fbmc_overlap);
        b.tx = syn.G;
        b.unitary = false;
        b.real_field = true;
        b.prefix = {PrefixKind::None, 0.0};
        break;
    }
    case Scheme::MCOTFS:
        b.tx = kron(CMatrix(dft_matrix(n).adjoint()), identity(m));
        break;
    case Scheme::ZAKOTFS: {
        CMatrix z(m * n, m * n);
        for (Index c = 0; c < m * n; ++c) {
            CVector e = CVector::Zero(m * n);
            e(c) = 1.0;
            z.col(c) = dzt(e, m, n, ZakDirection::Inverse);
        }
        b.tx = z;
        break;
    }
    case Scheme::ODDM:
        if (p.oddm_pulse == OddmPulse::Rect) {
            b.tx = structured_permutation(PermutationKind::Oddm, m, n) *
                   kron(identity(m), CMatrix(dft_matrix(n).adjoint()));
        } else {
            if (p.oddm_oversampling < 1) throw ConfigError("ODDM: oversampling must be >= 1");
            Index rows = 0;
            b.tx = oddm_ddop_matrix(g, p, rows);
            b.unitary = false;
            b.prefix = {PrefixKind::None, 0.0};
            b.sample_rate_hz = g.sample_rate_hz() * p.oddm_oversampling;
        }
        break;
    case Scheme::OTSM:
        if (!is_power_of_two(n)) throw ConfigError("OTSM: N must be a power of two");
        b.tx = kron(wht_matrix(n, p.otsm_order), identity(m)) *
               structured_permutation(PermutationKind::Shuffle, n, m);
        break;
    }
    b.rx = b.tx.adjoint();
    return b;
}

}  // namespace mcwf
