#pragma once

#include <functional>
#include <vector>

namespace shocklab {

enum class TimeScheme { ForwardEuler, Rk3, Rk5 };

// rhs(q, out, stage) writes dq/dt into out. post_stage (optional) runs on
// every freshly formed stage state, including the final one; DG uses it to
// apply the limiter after each stage.
class TimeIntegrator {
public:
    using Rhs = std::function<void(const std::vector<double>&, std::vector<double>&, int)>;
    using PostStage = std::function<void(std::vector<double>&, int)>;

    explicit TimeIntegrator(TimeScheme scheme) : scheme_(scheme) {}

    int stages() const;
    void step(std::vector<double>& q, double dt, const Rhs& rhs, const PostStage& post = {});

private:
    TimeScheme scheme_;
    std::vector<std::vector<double>> work_;

    std::vector<double>& slot(std::size_t i, std::size_t n);
};

// Timestep selection rules. FixedCfl: cfl dx / max_wave. FdVortex: 0.07 dx.
// DgAccuracy: 0.1 dx^(5/3). DgCfl: cfl dx / (max_wave (2 degree + 1)).
// A positive viscous_nu additionally caps dt at 0.5 dx^2 / nu.
enum class DtRule { FixedCfl, FdVortex, DgAccuracy, DgCfl };

struct DtSpec {
    DtRule rule = DtRule::FixedCfl;
    double cfl = 0.5;
    double viscous_nu = 0.0;
};

double cfl_timestep(const DtSpec& spec, double dx, double max_wave, int degree = 0);

} // namespace shocklab
