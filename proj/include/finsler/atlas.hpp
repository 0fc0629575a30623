#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "finsler/connections.hpp"
#include "finsler/field.hpp"

namespace finsler {

// Chart change x -> x~. Jacobian, inverse Jacobian and Hessian are evaluated
// at the source point x; `inverse` takes a target point.
struct ChartTransition {
    using Map = std::function<Point(const Point&)>;
    using Matrix = std::function<std::vector<Dual>(const Point&)>;

    std::string name;
    int n = 0;
    Map forward;
    Map inverse;
    Matrix jacobian;          // J^i_a = dx~^i/dx^a, row-major
    Matrix inverse_jacobian;  // (J^-1)^a_i = dx^a/dx~^i
    Matrix hessian;           // H^i_bc = d2 x~^i / dx^b dx^c, index (i*n+b)*n+c
    std::function<bool(const std::vector<double>& x)> overlap;  // source point lies in both charts
};

ChartTransition identity_transition(int n);
// x~ = A x + b
ChartTransition affine_transition(int n, std::vector<double> a, std::vector<double> b);
// x~ = (x1 + (x2)^2, x2)
ChartTransition quadratic_shear();
// x~ = (x1, x2 + c (x1)^2)
ChartTransition quadratic_lift(double c);
// second after first
ChartTransition compose(const ChartTransition& second, const ChartTransition& first);

// Conic domain of the target chart: points whose preimage lies in d and in the overlap.
Domain transform_domain(const Domain& d, const ChartTransition& t);

TensorField transform_tensor(const TensorField& t, const ChartTransition& tr);

Spray transform_connection(const Spray& g, const ChartTransition& tr);
NonlinearConnection transform_connection(const NonlinearConnection& n, const ChartTransition& tr);
AnisotropicConnection transform_connection(const AnisotropicConnection& gamma, const ChartTransition& tr);

// Max absolute defect per identity, evaluated in the target chart at the
// images of `samples` (source-chart points).
using CoherenceReport = std::map<std::string, double>;

CoherenceReport coherence_defect(const Spray& g, const ChartTransition& tr, const std::vector<Sample>& samples,
                                 const DiffEngine& engine = {});
CoherenceReport coherence_defect(const NonlinearConnection& n, const ChartTransition& tr,
                                 const std::vector<Sample>& samples, const DiffEngine& engine = {});
CoherenceReport coherence_defect(const AnisotropicConnection& gamma, const ChartTransition& tr,
                                 const std::vector<Sample>& samples, const DiffEngine& engine = {});

// Source sample (x, y) mapped to (x~, J y).
Sample map_sample(const ChartTransition& tr, const Sample& s);

}  // namespace finsler
