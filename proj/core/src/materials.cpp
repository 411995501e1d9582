#include "casimir/materials.hpp"

#include <cmath>
#include <stdexcept>

namespace casimir::materials {

PermittivityModel PermittivityModel::vacuum() {
    PermittivityModel m;
    m.kind_ = Kind::vacuum;
    return m;
}

PermittivityModel PermittivityModel::drude(double plasma_energy_ev,
                                           double relaxation_energy_ev) {
    if (!(plasma_energy_ev > 0.0))
        throw std::invalid_argument("drude: plasma energy must be positive");
    if (!(relaxation_energy_ev > 0.0))
        throw std::invalid_argument("drude: relaxation energy must be positive");
    PermittivityModel m;
    m.kind_ = Kind::drude_metal;
    m.plasma_energy_ev_ = plasma_energy_ev;
    m.relaxation_energy_ev_ = relaxation_energy_ev;
    return m;
}

PermittivityModel PermittivityModel::plasma(double plasma_energy_ev) {
    if (!(plasma_energy_ev > 0.0))
        throw std::invalid_argument("plasma: plasma energy must be positive");
    PermittivityModel m;
    m.kind_ = Kind::plasma_metal;
    m.plasma_energy_ev_ = plasma_energy_ev;
    return m;
}

PermittivityModel PermittivityModel::oscillators(std::vector<Oscillator> modes) {
    if (modes.empty())
        throw std::invalid_argument("oscillators: at least one mode required");
    for (const auto& o : modes) {
        if (!(o.strength >= 0.0))
            throw std::invalid_argument("oscillators: strengths must be >= 0");
        if (!(o.energy_ev > 0.0))
            throw std::invalid_argument("oscillators: energies must be positive");
        if (!(o.damping_ev >= 0.0))
            throw std::invalid_argument("oscillators: damping must be >= 0");
    }
    PermittivityModel m;
    m.kind_ = Kind::oscillator;
    m.modes_ = std::move(modes);
    return m;
}

PermittivityModel PermittivityModel::tabulated(
    std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("tabulated: need at least two samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].first > 0.0))
            throw std::invalid_argument("tabulated: energies must be positive");
        if (!(samples[i].second >= 1.0))
            throw std::invalid_argument("tabulated: eps must be >= 1");
        if (i > 0 && !(samples[i].first > samples[i - 1].first))
            throw std::invalid_argument("tabulated: energies must be strictly increasing");
    }
    PermittivityModel m;
    m.kind_ = Kind::tabulated;
    m.samples_ = std::move(samples);
    return m;
}

double PermittivityModel::eps(double xi_ev) const {
    if (!(xi_ev >= 0.0))
        throw std::invalid_argument("eps: frequency must be >= 0");
    switch (kind_) {
    case Kind::vacuum:
        return 1.0;
    case Kind::drude_metal: {
        if (xi_ev == 0.0) return kZeroFrequencyCap;
        const double wp2 = plasma_energy_ev_ * plasma_energy_ev_;
        return std::min(kZeroFrequencyCap,
                        1.0 + wp2 / (xi_ev * (xi_ev + relaxation_energy_ev_)));
    }
    case Kind::plasma_metal: {
        if (xi_ev == 0.0) return kZeroFrequencyCap;
        const double r = plasma_energy_ev_ / xi_ev;
        return std::min(kZeroFrequencyCap, 1.0 + r * r);
    }
    case Kind::oscillator: {
        double e = 1.0;
        for (const auto& o : modes_) {
            const double x = xi_ev / o.energy_ev;
            e += o.strength /
                 (1.0 + x * x + o.damping_ev * xi_ev / (o.energy_ev * o.energy_ev));
        }
        return e;
    }
    case Kind::tabulated: {
        if (xi_ev <= samples_.front().first) return samples_.front().second;
        if (xi_ev >= samples_.back().first) return samples_.back().second;
        std::size_t lo = 0, hi = samples_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (samples_[mid].first <= xi_ev) lo = mid;
            else hi = mid;
        }
        const double t = (std::log(xi_ev) - std::log(samples_[lo].first)) /
                         (std::log(samples_[hi].first) - std::log(samples_[lo].first));
        return samples_[lo].second +
               t * (samples_[hi].second - samples_[lo].second);
    }
    }
    return 1.0;
}

double PermittivityModel::zero_mode_eps_xi2() const {
    if (kind_ == Kind::plasma_metal)
        return plasma_energy_ev_ * plasma_energy_ev_;
    return 0.0;
}

} // namespace casimir::materials
