#include "mcwf/kpi.hpp"

#include <cmath>

namespace mcwf {

double cp_overhead(double t_cp, double t_sym)
{
    if (t_cp < 0) throw DomainError("cp_overhead: T_cp must be >= 0");
    if (!(t_sym > 0)) throw DomainError("cp_overhead: T_sym must be > 0");
    return t_cp / (t_sym + t_cp);
}

double spectral_efficiency(double pilot_fraction, int order, double symbols, double t_sym, double t_cp,
                           double bandwidth)
{
    if (!(pilot_fraction >= 0 && pilot_fraction < 1)) throw DomainError("spectral_efficiency: k must lie in [0, 1)");
    if (order < 2 || !(symbols > 0) || !(t_sym > 0) || t_cp < 0 || !(bandwidth > 0))
        throw DomainError("spectral_efficiency: parameters must be positive");
    return (1.0 - pilot_fraction) * std::log2(double(order)) * symbols / ((t_sym + t_cp) * bandwidth);
}

PilotOverhead pilot_overhead(PilotScheme scheme, long long l_max, long long alpha_max, long long xi, long long size)
{
    if (l_max < 0 || alpha_max < 0 || xi < 0) throw DomainError("pilot_overhead: arguments must be nonnegative");
    PilotOverhead p;
    if (scheme == PilotScheme::AFDM)
        p.count = 2 * (l_max + 1) * (2 * (alpha_max + xi) + 1) - 1;
    else
        p.count = (4 * (alpha_max + xi) + 1) * (2 * l_max + 1);
    p.fraction = size > 0 ? double(p.count) / double(size) : 0.0;
    return p;
}

}  // namespace mcwf
