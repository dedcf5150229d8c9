#include "lucas8/pipeline.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace lucas8 {

std::vector<LucasParams> SearchReport::hits_at(int n) const {
    std::vector<LucasParams> out;
    for (const auto& h : hits)
        if (h.n == n) out.push_back(h.params);
    return out;
}

SearchReport search_box(long p_max, long q_max, int n_max, int workers) {
    SearchReport rep;
    rep.p_max = p_max;
    rep.q_max = q_max;
    rep.n_max = n_max;
    std::vector<long> ps;
    for (long p = -p_max; p <= p_max; ++p)
        if (p != 0) ps.push_back(p);
    workers = std::max(1, workers);
    struct Slice {
        std::uint64_t scanned = 0;
        std::vector<SearchHit> hits;
    };
    std::vector<Slice> slices(static_cast<std::size_t>(workers));
    auto work = [&](std::size_t w) {
        const std::size_t lo = ps.size() * w / slices.size(), hi = ps.size() * (w + 1) / slices.size();
        for (std::size_t i = lo; i < hi; ++i) {
            for (long q = -q_max; q <= q_max; ++q) {
                if (q == 0) continue;
                const LucasParams pq{ps[i], q};
                if (gcd(pq.P, pq.Q) != 1 || degeneracy_class(pq) != Degeneracy::NonDegenerate) continue;
                ++slices[w].scanned;
                for (const auto& h : scan_square_terms(pq, n_max))
                    if (h.n >= 2) slices[w].hits.push_back({pq, h.n, h.root});
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> th;
        for (std::size_t w = 0; w < slices.size(); ++w) th.emplace_back(work, w);
        for (auto& t : th) t.join();
    }
    std::set<int> idx;
    for (auto& s : slices) {
        rep.pairs_scanned += s.scanned;
        for (auto& h : s.hits) {
            idx.insert(h.n);
            rep.hits.push_back(std::move(h));
        }
    }
    rep.indices.assign(idx.begin(), idx.end());
    return rep;
}

DriverSummary summarize(const DriverResult& r, int rank) {
    DriverSummary s;
    s.curve_id = r.curve_id;
    s.rank = rank;
    s.complete = r.complete;
    s.basis_multipliers = r.basis_multipliers;
    s.points = r.points;
    for (const auto& c : r.cases)
        s.cases.push_back({c.k, c.eps, c.r_only, to_string(c.verdict), c.bound, c.certificate});
    return s;
}

DescentRecord descend(const CurveInstance& e, const CurvePoint& p) {
    DescentRecord rec;
    rec.curve_id = e.id;
    rec.point = p;
    rec.ab = recover_ab(e, p);
    if (!rec.ab) {
        rec.verdict = "no integral (a,b)";
        return rec;
    }
    if (rec.ab->a == 0) {
        rec.verdict = "a = 0";
        return rec;
    }
    const PqResult r = ab_to_pq(rec.ab->eq, rec.ab->a, rec.ab->b);
    if (!r.params) {
        rec.verdict = r.failure;
        return rec;
    }
    rec.pq = r.params;
    if (degeneracy_class(*r.params) != Degeneracy::NonDegenerate) {
        rec.verdict = "degenerate";
        return rec;
    }
    if (!is_perfect_square(lucas_term(*r.params, 8))) {
        rec.verdict = "U_8 not a square";
        return rec;
    }
    rec.verdict = "accepted";
    return rec;
}

TheoremCertificate verify_theorem(const TheoremOptions& opt) {
    TheoremCertificate cert;
    cert.precision = opt.precision;
    cert.float_digits = opt.float_digits;
    cert.search = opt.search;
    std::set<LucasParams> accepted;
    std::vector<std::string> failing;
    for (const auto& e : catalog()) {
        if (e.rank < 1) continue;
        const DriverResult r = e.rank == 1 ? rank1_driver(e, opt.precision) : rank2_driver(e, opt.precision);
        cert.drivers.push_back(summarize(r, e.rank));
        if (!r.complete) {
            for (const auto& c : r.cases)
                if (c.verdict == Verdict::Inconclusive)
                    failing.push_back(e.id + " k=" + std::to_string(c.k) + " eps=" + std::to_string(c.eps));
            if (failing.empty() || failing.back().rfind(e.id, 0) != 0) failing.push_back(e.id);
        }
        for (const auto& p : r.points) {
            DescentRecord rec = descend(e, p);
            if (rec.verdict == "accepted") accepted.insert(*rec.pq);
            cert.descents.push_back(std::move(rec));
        }
        if (opt.with_heights) {
            CertifyOptions co;
            co.workers = opt.workers;
            co.height_tol = opt.height_tol;
            co.digits = opt.float_digits;
            cert.heights.push_back(certify_generators(e, co));
            if (!cert.heights.back().conclusion) failing.push_back(e.id + " generators: " + cert.heights.back().failure);
        }
    }
    cert.final_pairs.assign(accepted.begin(), accepted.end());
    cert.complete = failing.empty();
    for (const auto& f : failing) cert.partial += (cert.partial.empty() ? "" : "; ") + f;
    return cert;
}

std::vector<PqDescent> descents_for(const LucasParams& pq) {
    std::vector<PqDescent> out;
    for (SourceEq eq : {SourceEq::Eq1, SourceEq::Eq2, SourceEq::Eq3, SourceEq::Eq4}) {
        const bool small = eq == SourceEq::Eq1 || eq == SourceEq::Eq2;
        Int a2 = pq.P;
        if (!small) {
            if (pq.P % 4 != 0) continue;
            a2 = pq.P / 4;
        }
        if (a2 <= 0) continue;
        const auto a = is_perfect_square(a2);
        if (!a) continue;
        const Int a4 = a2 * a2;
        Int b2;
        switch (eq) {
            case SourceEq::Eq1: b2 = a4 - 2 * pq.Q; break;
            case SourceEq::Eq2: b2 = 2 * pq.Q - a4; break;
            case SourceEq::Eq3: b2 = 8 * a4 - pq.Q; break;
            case SourceEq::Eq4: b2 = pq.Q - 8 * a4; break;
        }
        if (b2 < 0) continue;
        const auto b = is_perfect_square(b2);
        if (!b) continue;
        const PqResult r = ab_to_pq(eq, *a, *b);
        if (r.params && *r.params == pq) out.push_back({eq, *a, *b, *r.c});
    }
    return out;
}

}  // namespace lucas8
