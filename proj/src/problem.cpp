#include "polysinc/problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polysinc {

double ProblemSpec::a_prime(double x) const {
    if (coef_a_prime) return coef_a_prime(x);
    if (!coef_a) return 0.0;
    const double step = 1e-7 * (b - a);
    return (coef_a(x + step) - coef_a(x - step)) / (2.0 * step);
}

PartitionTree PartitionTree::initial(double a, double b, int N) {
    if (!(b > a)) {
        throw std::invalid_argument("PartitionTree: interval must satisfy b > a");
    }
    PartitionTree tree;
    tree.boundaries = {a, b};
    tree.partitions.push_back(sinc_points(a, b, N));
    tree.point_set.insert(tree.partitions[0].points.begin(),
                          tree.partitions[0].points.end());
    return tree;
}

int PiecewiseSolution::find_partition(double x) const {
    const auto& bnd = boundaries;
    const int K = partition_count();
    auto it = std::upper_bound(bnd.begin(), bnd.end(), x);
    int k = static_cast<int>(it - bnd.begin()) - 1;
    return std::clamp(k, 0, K - 1);
}

double PiecewiseSolution::value(double x) const {
    const int k = find_partition(x);
    const Eigen::VectorXd row = basis_row(bases[k], x);
    return row.dot(coeffs[k]);
}

double PiecewiseSolution::deriv(double x, int order) const {
    const int k = find_partition(x);
    const auto& c = coeffs[k];
    return eval_basis_deriv(bases[k], std::span<const double>(c.data(), c.size()), x,
                            order);
}

double PiecewiseSolution::max_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs) {
        m = std::max(m, c.cwiseAbs().maxCoeff());
    }
    return m;
}

}  // namespace polysinc
