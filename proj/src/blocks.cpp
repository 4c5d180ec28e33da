#include "shs/blocks.hpp"

#include "shs/radii.hpp"

#include <sstream>

namespace shs {

namespace {

CMat block_diag(const CMat& m, int d) {
    const Eigen::Index n = m.rows();
    CMat out = CMat::Zero(n * d, n * d);
    for (int k = 0; k < d; ++k) out.block(k * n, k * n, n, n) = m;
    return out;
}

CMat assemble_matrix(const std::vector<CMat>& grid, int d, Eigen::Index n) {
    CMat out(n * d, n * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out.block(i * n, j * n, n, n) =
                grid[static_cast<std::size_t>(i) * d + j];
    return out;
}

} // namespace

Weight inflate_weight(const Weight& w, int d) {
    if (d < 1) throw DimensionMismatch("inflate_weight: d must be >= 1");
    if (d == 1) return w;
    auto data = std::make_shared<Weight::Data>();
    data->dim = w.dim() * d;
    data->rank = w.rank() * d;
    data->tol = w.tol();
    data->A = block_diag(w.A(), d);
    data->B = block_diag(w.B(), d);
    data->B_pinv = block_diag(w.B_pinv(), d);
    data->A_pinv = block_diag(w.A_pinv(), d);
    data->P = block_diag(w.P(), d);
    data->range_basis = CMat::Zero(w.dim() * d, w.rank() * d);
    for (int k = 0; k < d; ++k)
        data->range_basis.block(k * w.dim(), k * w.rank(), w.dim(),
                                w.rank()) = w.range_basis();
    return Weight(std::move(data));
}

OpMatrix assemble(const Weight& w, const std::vector<CMat>& grid_row_major) {
    const std::size_t cells = grid_row_major.size();
    int d = static_cast<int>(std::lround(std::sqrt(double(cells))));
    if (d < 1 || static_cast<std::size_t>(d) * d != cells)
        throw DimensionMismatch("assemble: grid is not square");

    const Eigen::Index n = w.dim();
    OpMatrix m;
    m.d = d;
    m.w = w;
    m.grid = grid_row_major;
    m.hat = RMat::Zero(d, d);

    std::vector<std::pair<int, int>> offenders;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const CMat& entry = m.block(i, j);
            if (entry.rows() != n || entry.cols() != n) {
                std::ostringstream os;
                os << "assemble: entry (" << i << "," << j << ") is "
                   << entry.rows() << "x" << entry.cols() << ", expected "
                   << n << "x" << n;
                throw DimensionMismatch(os.str());
            }
            const AOp op = wrap(w, entry);
            if (!op.half_bounded) {
                offenders.emplace_back(i, j);
            } else {
                m.hat(i, j) = op.a_norm;
            }
        }
    }
    if (!offenders.empty()) {
        std::ostringstream os;
        os << "assemble: entries not A-bounded at";
        for (auto [i, j] : offenders) os << " (" << i << "," << j << ")";
        throw EntryNotABounded(os.str());
    }

    m.inflated_weight = inflate_weight(w, d);
    m.inflated = wrap(m.inflated_weight, assemble_matrix(m.grid, d, n));
    return m;
}

OpMatrix assemble(const Weight& w, const std::vector<std::vector<CMat>>& grid) {
    std::vector<CMat> flat;
    const std::size_t d = grid.size();
    for (const auto& row : grid) {
        if (row.size() != d)
            throw DimensionMismatch("assemble: ragged grid");
        for (const auto& entry : row) flat.push_back(entry);
    }
    return assemble(w, flat);
}

RMat hat_matrix(const OpMatrix& m) { return m.hat; }

std::vector<CMat> multiply_grids(const OpMatrix& a, const OpMatrix& b) {
    if (a.d != b.d || a.w.dim() != b.w.dim())
        throw DimensionMismatch("multiply_grids: incompatible grids");
    const int d = a.d;
    const Eigen::Index n = a.w.dim();
    std::vector<CMat> out(static_cast<std::size_t>(d) * d,
                          CMat::Zero(n, n));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                out[static_cast<std::size_t>(i) * d + j] +=
                    a.block(i, k) * b.block(k, j);
    return out;
}

std::pair<double, double> two_by_two_radii(const Weight& w, const CMat& T,
                                           const CMat& S) {
    const AOp opT = wrap(w, T);
    const AOp opS = wrap(w, S);
    if (!opT.half_bounded || !opS.half_bounded)
        throw NotABounded("two_by_two_radii: both blocks must be A-bounded");

    const double diag_r =
        std::max(r_a(opT).value, r_a(opS).value);
    const double antidiag_r = std::sqrt(r_a(wrap(w, CMat(T * S))).value);

    const Eigen::Index n = w.dim();
    const CMat zero = CMat::Zero(n, n);
    const OpMatrix diag = assemble(w, {T, zero, zero, S});
    const OpMatrix anti = assemble(w, {zero, T, S, zero});
    const double diag_assembled = r_a(diag.inflated).value;
    const double anti_assembled = r_a(anti.inflated).value;

    const double rel = w.tol().eq_rel;
    auto agree = [rel](double a, double b) {
        return std::abs(a - b) <= rel * (1.0 + std::max(a, b));
    };
    if (!agree(diag_r, diag_assembled) || !agree(antidiag_r, anti_assembled)) {
        std::ostringstream os;
        os << "two_by_two_radii: closed forms (" << diag_r << ", "
           << antidiag_r << ") disagree with the assembled inflation ("
           << diag_assembled << ", " << anti_assembled << ")";
        throw NoConvergence(os.str());
    }
    return {diag_r, antidiag_r};
}

} // namespace shs
