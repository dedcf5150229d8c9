#include "lucas8/json_io.hpp"

#include <stdexcept>

namespace lucas8 {

namespace {

Int int_from(const json& j) { return Int(j.get<std::string>()); }

json cplx_json(const Cplx& z) { return {{"re", to_json(z.re)}, {"im", to_json(z.im)}}; }
Cplx cplx_from(const json& j) { return Cplx(real_from_json(j.at("re")), real_from_json(j.at("im"))); }

template <class T, class F>
json array_of(const std::vector<T>& v, F f) {
    json a = json::array();
    for (const auto& x : v) a.push_back(f(x));
    return a;
}

json ints(const std::vector<long>& v) { return json(v); }

PlaceKind place_kind_from(const std::string& s) {
    if (s == to_string(PlaceKind::Finite)) return PlaceKind::Finite;
    if (s == to_string(PlaceKind::Real)) return PlaceKind::Real;
    if (s == to_string(PlaceKind::Complex)) return PlaceKind::Complex;
    throw std::invalid_argument("unknown place kind: " + s);
}

Provenance provenance_from(const std::string& s) {
    if (s == to_string(Provenance::Computed)) return Provenance::Computed;
    if (s == to_string(Provenance::TableData)) return Provenance::TableData;
    throw std::invalid_argument("unknown provenance: " + s);
}

SourceEq eq_from(const std::string& s) {
    for (SourceEq e : {SourceEq::Eq1, SourceEq::Eq2, SourceEq::Eq3, SourceEq::Eq4})
        if (s == to_string(e)) return e;
    throw std::invalid_argument("unknown equation: " + s);
}

json place_json(const PlaceData& p) {
    json j{{"label", p.label},
           {"kind", to_string(p.kind)},
           {"local_degree", p.local_degree},
           {"mu", to_json(p.mu)},
           {"mu_provenance", to_string(p.mu_provenance)},
           {"epsilon", to_json(p.epsilon)},
           {"epsilon_is_upper_bound", p.epsilon_is_upper_bound},
           {"epsilon_provenance", to_string(p.epsilon_provenance)},
           {"argmin", cplx_json(p.argmin)},
           {"argmin_kind", p.argmin_kind}};
    j["witness"] = p.witness ? to_json(*p.witness) : json(nullptr);
    return j;
}

PlaceData place_from(const json& j) {
    PlaceData p;
    p.label = j.at("label").get<std::string>();
    p.kind = place_kind_from(j.at("kind").get<std::string>());
    p.local_degree = j.at("local_degree").get<int>();
    p.mu = rat_from_json(j.at("mu"));
    p.mu_provenance = provenance_from(j.at("mu_provenance").get<std::string>());
    p.epsilon = real_from_json(j.at("epsilon"));
    p.epsilon_is_upper_bound = j.at("epsilon_is_upper_bound").get<bool>();
    p.epsilon_provenance = provenance_from(j.at("epsilon_provenance").get<std::string>());
    p.argmin = cplx_from(j.at("argmin"));
    p.argmin_kind = j.at("argmin_kind").get<std::string>();
    if (!j.at("witness").is_null()) p.witness = field_element_from_json(j.at("witness"));
    return p;
}

CandidateShape shape_from(const json& j) {
    CandidateShape s;
    s.label = j.at("label").get<std::string>();
    s.degree = j.at("degree").get<int>();
    for (const auto& x : j.at("scale")) s.scale.push_back(rat_from_json(x));
    for (const auto& x : j.at("factor")) s.factor.push_back(rat_from_json(x));
    s.max_abs = j.at("max_abs").get<std::vector<long>>();
    s.modulus = j.at("modulus").get<std::vector<long>>();
    s.residue = j.at("residue").get<std::vector<long>>();
    return s;
}

json survivor_json(const Survivor& s) {
    return {{"point", to_json(s.point)},
            {"expression", s.expression},
            {"coeffs", ints(s.coeffs)},
            {"torsion", s.torsion},
            {"explained", s.explained}};
}

Survivor survivor_from(const json& j) {
    Survivor s;
    s.point = point_from_json(j.at("point"));
    s.expression = j.at("expression").get<std::string>();
    s.coeffs = j.at("coeffs").get<std::vector<long>>();
    s.torsion = j.at("torsion").get<int>();
    s.explained = j.at("explained").get<bool>();
    return s;
}

json chain_json(const BoundChain& c) {
    json j{{"label", c.label},
           {"hhat_bound", to_json(c.hhat_bound)},
           {"hcap", to_json(c.hcap)},
           {"B", to_json(c.B)},
           {"shapes", array_of(c.shapes, [](const CandidateShape& s) { return to_json(s); })},
           {"polynomials", c.polynomials},
           {"filtered", c.filtered},
           {"roots", c.roots},
           {"survivors", array_of(c.survivors, survivor_json)},
           {"torsion_found", array_of(c.torsion_found, [](const CurvePoint& p) { return to_json(p); })}};
    j["published_B"] = c.published_B ? json(*c.published_B) : json(nullptr);
    return j;
}

BoundChain chain_from(const json& j) {
    BoundChain c;
    c.label = j.at("label").get<std::string>();
    c.hhat_bound = real_from_json(j.at("hhat_bound"));
    c.hcap = real_from_json(j.at("hcap"));
    c.B = real_from_json(j.at("B"));
    if (!j.at("published_B").is_null()) c.published_B = j.at("published_B").get<double>();
    for (const auto& s : j.at("shapes")) c.shapes.push_back(shape_from(s));
    c.polynomials = j.at("polynomials").get<std::uint64_t>();
    c.filtered = j.at("filtered").get<std::uint64_t>();
    c.roots = j.at("roots").get<std::uint64_t>();
    for (const auto& s : j.at("survivors")) c.survivors.push_back(survivor_from(s));
    for (const auto& p : j.at("torsion_found")) c.torsion_found.push_back(point_from_json(p));
    return c;
}

json descent_json(const DescentRecord& d) {
    json j{{"curve", d.curve_id}, {"point", to_json(d.point)}, {"verdict", d.verdict}};
    if (d.ab)
        j["ab"] = {{"eq", to_string(d.ab->eq)},
                   {"ratio", to_json(d.ab->ratio)},
                   {"a", to_string(d.ab->a)},
                   {"b", to_string(d.ab->b)}};
    else
        j["ab"] = nullptr;
    j["pq"] = d.pq ? to_json(*d.pq) : json(nullptr);
    return j;
}

DescentRecord descent_from(const json& j) {
    DescentRecord d;
    d.curve_id = j.at("curve").get<std::string>();
    d.point = point_from_json(j.at("point"));
    d.verdict = j.at("verdict").get<std::string>();
    if (!j.at("ab").is_null()) {
        const auto& a = j.at("ab");
        d.ab = DescentSolution{eq_from(a.at("eq").get<std::string>()), rat_from_json(a.at("ratio")),
                               int_from(a.at("a")), int_from(a.at("b"))};
    }
    if (!j.at("pq").is_null()) d.pq = params_from_json(j.at("pq"));
    return d;
}

json driver_json(const DriverSummary& d) {
    json cases = json::array();
    for (const auto& c : d.cases)
        cases.push_back({{"k", c.k},
                         {"eps", c.eps},
                         {"r_only", c.r_only},
                         {"verdict", c.verdict},
                         {"bound", c.bound},
                         {"certificate", c.certificate}});
    return {{"curve", d.curve_id},
            {"rank", d.rank},
            {"complete", d.complete},
            {"basis_multipliers", ints(d.basis_multipliers)},
            {"cases", cases},
            {"points", array_of(d.points, [](const CurvePoint& p) { return to_json(p); })}};
}

DriverSummary driver_from(const json& j) {
    DriverSummary d;
    d.curve_id = j.at("curve").get<std::string>();
    d.rank = j.at("rank").get<int>();
    d.complete = j.at("complete").get<bool>();
    d.basis_multipliers = j.at("basis_multipliers").get<std::vector<long>>();
    for (const auto& c : j.at("cases"))
        d.cases.push_back({c.at("k").get<long>(), c.at("eps").get<int>(), c.at("r_only").get<bool>(),
                           c.at("verdict").get<std::string>(), c.at("bound").get<int>(),
                           c.at("certificate").get<std::string>()});
    for (const auto& p : j.at("points")) d.points.push_back(point_from_json(p));
    return d;
}

}  // namespace

json to_json(const Rat& q) { return {{"num", to_string(Int(q.get_num()))}, {"den", to_string(Int(q.get_den()))}}; }

json to_json(const FieldElement& x) {
    json c = json::array();
    for (const auto& q : x.coords()) c.push_back(to_json(q));
    return {{"field", to_string(x.field())}, {"coords", c}};
}

json to_json(const CurvePoint& p) {
    if (p.infinity) return "infinity";
    return {{"x", to_json(p.X)}, {"y", to_json(p.Y)}};
}

json to_json(const LucasParams& pq) { return {{"P", to_string(pq.P)}, {"Q", to_string(pq.Q)}}; }

json to_json(const Real& r) { return to_string(r, kJsonDigits); }

json to_json(const CandidateShape& s) {
    return {{"label", s.label},
            {"degree", s.degree},
            {"scale", array_of(s.scale, [](const Rat& q) { return to_json(q); })},
            {"factor", array_of(s.factor, [](const Rat& q) { return to_json(q); })},
            {"max_abs", ints(s.max_abs)},
            {"modulus", ints(s.modulus)},
            {"residue", ints(s.residue)},
            {"count", s.count()}};
}

json to_json(const HeightCertificate& c) {
    json j{{"curve", c.curve_id},
           {"places", array_of(c.bound.places, place_json)},
           {"C", to_json(c.bound.C)},
           {"generator_heights", array_of(c.generator_heights, [](const Real& r) { return to_json(r); })},
           {"height_tol", c.height_tol},
           {"chains", array_of(c.chains, chain_json)},
           {"conclusion", c.conclusion ? "generators" : "failed"},
           {"failure", c.failure}};
    j["pairing"] = c.pairing ? to_json(*c.pairing) : json(nullptr);
    json halving = json::array();
    for (const auto& h : c.halving)
        halving.push_back({{"expression", h.expression},
                           {"halves", array_of(h.halves, [](const CurvePoint& p) { return to_json(p); })}});
    j["halving"] = halving;
    return j;
}

json to_json(const SearchReport& r) {
    json hits = json::array();
    for (const auto& h : r.hits)
        hits.push_back({{"P", to_string(h.params.P)}, {"Q", to_string(h.params.Q)}, {"n", h.n}, {"root", to_string(h.root)}});
    json per_n = json::object();
    for (int n : r.indices) per_n[std::to_string(n)] = r.hits_at(n).size();
    return {{"p_max", r.p_max},     {"q_max", r.q_max},     {"n_max", r.n_max}, {"pairs_scanned", r.pairs_scanned},
            {"indices", r.indices}, {"hits_per_n", per_n}, {"hits", hits}};
}

json to_json(const TheoremCertificate& c) {
    json j{{"tool_version", c.tool_version},
           {"precision", {{"padic_k", c.precision}, {"float_digits", c.float_digits}}},
           {"drivers", array_of(c.drivers, driver_json)},
           {"descents", array_of(c.descents, descent_json)},
           {"heights", array_of(c.heights, [](const HeightCertificate& h) { return to_json(h); })},
           {"final_pairs", array_of(c.final_pairs, [](const LucasParams& p) { return to_json(p); })},
           {"complete", c.complete},
           {"partial", c.partial}};
    j["search"] = c.search ? to_json(*c.search) : json(nullptr);
    return j;
}

json to_json(const SmallNWitness& w) {
    json j{{"n", w.n},
           {"criterion_value", to_string(w.criterion_value)},
           {"square", w.square},
           {"family", w.family_tag},
           {"family_params", {{"delta", w.params.delta}, {"a", to_string(w.params.a)}, {"b", to_string(w.params.b)}}}};
    if (w.curve_point && !w.curve_point->at_infinity)
        j["curve_point"] = {{"x", to_json(w.curve_point->x)}, {"y", to_json(w.curve_point->y)}};
    else
        j["curve_point"] = nullptr;
    return j;
}

json to_json(const CurveInstance& e) {
    return {{"id", e.id},
            {"field", to_string(e.field)},
            {"A", to_json(e.A)},
            {"B", to_json(e.B)},
            {"delta", e.delta_name},
            {"rank", e.rank},
            {"equation", to_string(e.eq)},
            {"beta", to_json(e.beta)},
            {"gamma", to_json(e.gamma)},
            {"generator_names", e.generator_names},
            {"generators", array_of(e.generators, [](const CurvePoint& p) { return to_json(p); })}};
}

Rat rat_from_json(const json& j) { return make_rat(int_from(j.at("num")), int_from(j.at("den"))); }

FieldElement field_element_from_json(const json& j) {
    std::array<Rat, 4> c;
    const auto& a = j.at("coords");
    if (a.size() != 4) throw std::invalid_argument("field element needs 4 coordinates");
    for (std::size_t i = 0; i < 4; ++i) c[i] = rat_from_json(a[i]);
    return FieldElement(field_from_string(j.at("field").get<std::string>()), c);
}

CurvePoint point_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() != "infinity") throw std::invalid_argument("bad point");
        return CurvePoint::at_infinity();
    }
    return {field_element_from_json(j.at("x")), field_element_from_json(j.at("y")), false};
}

LucasParams params_from_json(const json& j) { return {int_from(j.at("P")), int_from(j.at("Q"))}; }

Real real_from_json(const json& j) {
    PrecisionScope scope(kJsonDigits + 10);
    return Real(j.get<std::string>());
}

HeightCertificate height_certificate_from_json(const json& j) {
    HeightCertificate c;
    c.curve_id = j.at("curve").get<std::string>();
    c.bound.curve_id = c.curve_id;
    for (const auto& p : j.at("places")) c.bound.places.push_back(place_from(p));
    c.bound.C = real_from_json(j.at("C"));
    for (const auto& h : j.at("generator_heights")) c.generator_heights.push_back(real_from_json(h));
    if (!j.at("pairing").is_null()) c.pairing = real_from_json(j.at("pairing"));
    c.height_tol = j.at("height_tol").get<double>();
    for (const auto& h : j.at("halving")) {
        HalvingCheck hc;
        hc.expression = h.at("expression").get<std::string>();
        for (const auto& p : h.at("halves")) hc.halves.push_back(point_from_json(p));
        c.halving.push_back(std::move(hc));
    }
    for (const auto& ch : j.at("chains")) c.chains.push_back(chain_from(ch));
    c.conclusion = j.at("conclusion").get<std::string>() == "generators";
    c.failure = j.at("failure").get<std::string>();
    return c;
}

SearchReport search_report_from_json(const json& j) {
    SearchReport r;
    r.p_max = j.at("p_max").get<long>();
    r.q_max = j.at("q_max").get<long>();
    r.n_max = j.at("n_max").get<int>();
    r.pairs_scanned = j.at("pairs_scanned").get<std::uint64_t>();
    r.indices = j.at("indices").get<std::vector<int>>();
    for (const auto& h : j.at("hits"))
        r.hits.push_back({{int_from(h.at("P")), int_from(h.at("Q"))}, h.at("n").get<int>(), int_from(h.at("root"))});
    return r;
}

TheoremCertificate theorem_certificate_from_json(const json& j) {
    TheoremCertificate c;
    c.tool_version = j.at("tool_version").get<std::string>();
    c.precision = j.at("precision").at("padic_k").get<int>();
    c.float_digits = j.at("precision").at("float_digits").get<unsigned>();
    if (!j.at("search").is_null()) c.search = search_report_from_json(j.at("search"));
    for (const auto& d : j.at("drivers")) c.drivers.push_back(driver_from(d));
    for (const auto& d : j.at("descents")) c.descents.push_back(descent_from(d));
    for (const auto& h : j.at("heights")) c.heights.push_back(height_certificate_from_json(h));
    for (const auto& p : j.at("final_pairs")) c.final_pairs.push_back(params_from_json(p));
    c.complete = j.at("complete").get<bool>();
    c.partial = j.at("partial").get<std::string>();
    return c;
}

}  // namespace lucas8
