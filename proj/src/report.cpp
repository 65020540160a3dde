#include "ia/report.hpp"

namespace ia {

int AlignmentReport::desired_sum() const {
    int s = 0;
    for (const auto& r : per_receiver) s += r.desired;
    return s;
}

bool AlignmentReport::all_pass() const {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

AlignmentReport alignment_report(const NetworkInstance& inst, const std::vector<Matrix>& precoders,
                                 const std::vector<Matrix>& declared, const RankTolerance& tol) {
    if (precoders.size() != static_cast<std::size_t>(inst.K)) {
        throw InputError("need one precoder per transmitter");
    }
    for (const auto& v : precoders) {
        if (v.rows() != inst.n) throw InputError("precoder row count does not match n");
    }
    if (!declared.empty() && declared.size() != static_cast<std::size_t>(inst.K)) {
        throw InputError("need one declared interference basis per receiver");
    }
    // Ranks depend only on the spans; orthonormal bases keep Vandermonde-like
    // precoder columns from eating the threshold.
    std::vector<Matrix> V;
    for (const auto& v : precoders) V.push_back(range_basis(v, tol));
    AlignmentReport rep;
    rep.n = inst.n;
    rep.pollution_free = true;
    long interference_sum = 0;
    for (int p = 0; p < inst.K; ++p) {
        Matrix desired = inst.link(p, p) * V[p];
        std::vector<Matrix> interf;
        for (int q = 0; q < inst.K; ++q) {
            if (q != p && V[q].cols() > 0) interf.push_back(inst.link(p, q) * V[q]);
        }
        ReceiverDims d;
        Matrix all_i = interf.empty() ? Matrix(inst.n, 0) : hcat(interf);
        d.interference = numeric_rank(all_i, tol);
        d.total = numeric_rank(hcat({desired, all_i}), tol);
        d.desired = d.total - d.interference;
        if (numeric_rank(desired, tol) + d.interference != d.total) rep.pollution_free = false;
        interference_sum += d.interference;
        rep.per_receiver.push_back(d);
        Rational f(d.desired, inst.n);
        f.canonicalize();
        rep.dof_vector.push_back(f);
        if (!declared.empty()) {
            rep.check("interference_in_declared_rx" + std::to_string(p + 1),
                      is_subspace(all_i, declared[p], tol));
        }
    }
    rep.imperfect_ia = interference_sum < static_cast<long>(inst.K - 1) * inst.n;
    rep.total_dof = Rational(rep.desired_sum(), inst.n);
    rep.total_dof.canonicalize();
    for (int p = 0; p < inst.K; ++p) {
        rep.rank("desired_rx" + std::to_string(p + 1), rep.per_receiver[p].desired);
        rep.rank("interference_rx" + std::to_string(p + 1), rep.per_receiver[p].interference);
    }
    return rep;
}

}  // namespace ia
