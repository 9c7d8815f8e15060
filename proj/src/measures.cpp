#include "dclosure/measures.hpp"

#include <stdexcept>

namespace dclosure {

double distortion(const ProximityGraph& original, const ProximityGraph& closed) {
    if (original.size() != closed.size())
        throw std::invalid_argument("distortion: graphs have " + std::to_string(original.size()) + " and " +
                                    std::to_string(closed.size()) + " vertices");
    return (closed.weights() - original.weights()).cwiseAbs().sum();
}

double asymmetry(const MatrixXd& d) {
    if (d.rows() != d.cols()) throw std::invalid_argument("asymmetry: matrix must be square");
    double total = 0.0;
    for (Eigen::Index i = 0; i < d.rows(); ++i)
        for (Eigen::Index j = i + 1; j < d.cols(); ++j) total += extended_abs_diff(d(i, j), d(j, i));
    return total;
}

double asymmetry(const DistanceGraph& d) { return asymmetry(d.weights()); }

}  // namespace dclosure
