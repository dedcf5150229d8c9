#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lucas8/chabauty.hpp"
#include "lucas8/curve.hpp"
#include "lucas8/mw.hpp"

namespace lucas8 {

inline constexpr const char* kToolVersion = "lucas8 1.0.0";

struct SearchHit {
    LucasParams params;
    int n = 0;
    Int root;
    friend bool operator==(const SearchHit& a, const SearchHit& b) {
        return a.params == b.params && a.n == b.n && a.root == b.root;
    }
};

struct SearchReport {
    long p_max = 0;
    long q_max = 0;
    int n_max = 0;
    std::uint64_t pairs_scanned = 0;
    std::vector<SearchHit> hits;  // n >= 2, ordered by (P, Q, n)
    std::vector<int> indices;     // distinct n among hits

    std::vector<LucasParams> hits_at(int n) const;
};

// Coprime nonzero (P,Q) with |P| <= p_max, |Q| <= q_max, degenerate pairs excluded.
SearchReport search_box(long p_max, long q_max, int n_max, int workers = 1);

struct DescentRecord {
    std::string curve_id;
    CurvePoint point;
    std::optional<DescentSolution> ab;
    std::optional<LucasParams> pq;
    std::string verdict;  // "accepted" or the rejection reason
};

struct CaseSummary {
    long k = 0;
    int eps = 0;
    bool r_only = false;
    std::string verdict;
    int bound = -1;
    std::string certificate;
    friend bool operator==(const CaseSummary&, const CaseSummary&) = default;
};

struct DriverSummary {
    std::string curve_id;
    int rank = 0;
    bool complete = false;
    std::vector<long> basis_multipliers;
    std::vector<CaseSummary> cases;
    std::vector<CurvePoint> points;
};

DriverSummary summarize(const DriverResult& r, int rank);

struct TheoremCertificate {
    std::string tool_version = kToolVersion;
    int precision = 5;
    unsigned float_digits = 50;
    std::optional<SearchReport> search;
    std::vector<DriverSummary> drivers;
    std::vector<DescentRecord> descents;
    std::vector<HeightCertificate> heights;
    std::vector<LucasParams> final_pairs;
    bool complete = false;
    std::string partial;  // failing cosets when incomplete
};

struct TheoremOptions {
    int precision = 5;
    unsigned float_digits = 50;
    int workers = 1;
    std::optional<SearchReport> search;
    bool with_heights = false;
    double height_tol = 1e-6;
};

// Maps a driver point through recover_ab and ab_to_pq, rejecting degenerate pairs.
DescentRecord descend(const CurveInstance& e, const CurvePoint& p);

TheoremCertificate verify_theorem(const TheoremOptions& opt = {});

// Source equations and (a,b) with ab_to_pq(eq, a, b) = (P,Q), b >= 0.
struct PqDescent {
    SourceEq eq;
    Int a;
    Int b;
    Int c;
};
std::vector<PqDescent> descents_for(const LucasParams& pq);

}  // namespace lucas8
