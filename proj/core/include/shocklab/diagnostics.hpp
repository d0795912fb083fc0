#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "shocklab/dg.hpp"
#include "shocklab/euler.hpp"
#include "shocklab/grid.hpp"

namespace shocklab {

// Paired abscissa/value samples; abscissae must stay monotone.
struct Series {
    std::vector<double> x;
    std::vector<double> v;
    int size() const { return static_cast<int>(x.size()); }
};

struct DiagnosticsReport {
    std::string case_id;
    std::string metric;
    Series series;
    double max_pe = 0.0;
    double cep_final = 0.0;
    double l1 = 0.0;
    double order = 0.0;
};

// ConfigError on non-finite entries or decreasing abscissae.
void validate(const DiagnosticsReport& rep);

// Conservation-error percentage: per-cell excess of the shock-frame mass flux
// rho(u - u_S) over its upstream value, summed times dx. DG sums element means.
double cep(const Field1D& q, const Grid1D& g, const ShockSpec& spec, const GasModel& gas);
double cep(const DgField1D& q, const Grid1D& g, const ShockSpec& spec, const GasModel& gas);

enum class FluxQuantity { MassFlux, MomentumFlux, EnergyFlux };

// rho u, rho u^2 + p, or (rho e_t + p) u of a conserved 1-D state.
double flux_quantity(FluxQuantity which, const double* q, const GasModel& gas);

// Percentage error |ref - f(q_i)| / ref * 100 per point; DG samples element centers.
Series pe_profile(const Field1D& q, const Grid1D& g, FluxQuantity which, double reference,
                  const GasModel& gas);
Series pe_profile(const DgField1D& q, const Grid1D& g, FluxQuantity which, double reference,
                  const GasModel& gas);

// Duct variant: percentage error of A(x) rho u.
Series pe_profile_area(const Field1D& q, const Grid1D& g, double reference, const GasModel& gas);
Series pe_profile_area(const DgField1D& q, const Grid1D& g, double reference, const GasModel& gas);

// Normal mass flux rho (u - v)/sqrt(2) on 200 points along y = x - 1/2 from
// (1/2, 0) to (3/2, 1). Grid data interpolates bilinearly between cell centers
// (boundary samples reach one ghost ring); DG evaluates the element polynomial.
Series pe_profile_xi(const Field2D& q, const Grid2D& g, double reference, const GasModel& gas);
Series pe_profile_xi(const DgField2D& q, const Grid2D& g, double reference, const GasModel& gas);

double max_value(const Series& s);

// Mean absolute pointwise error of one component.
double l1_point_error(const Field1D& q, const Grid1D& g, int comp,
                      const std::function<double(double)>& exact);
double l1_point_error(const Field2D& q, const Grid2D& g, int comp,
                      const std::function<double(double, double)>& exact);

// Mean absolute error of cell or element means against exact means (Gauss rule).
double l1_mean_error(const Field1D& q, const Grid1D& g, int comp,
                     const std::function<double(double)>& exact);
double l1_mean_error(const DgField1D& q, const Grid1D& g, int comp,
                     const std::function<double(double)>& exact);
double l1_mean_error(const DgField2D& q, const Grid2D& g, int comp,
                     const std::function<double(double, double)>& exact);

struct OrderRow {
    double spacing = 0.0;
    double error = 0.0;
    double order = 0.0; // log ratio against the previous row; first row holds 0
};

// runs: (spacing, L1 error) pairs ordered coarse to fine.
std::vector<OrderRow> l1_error_and_order(const std::vector<std::pair<double, double>>& runs);

} // namespace shocklab
