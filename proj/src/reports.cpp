#include <omnikit/reports.hpp>

#include <cmath>

namespace omnikit::reports {

namespace {
    /// JSON has no infinities; non-finite logs are written as strings.
    auto real(double v) -> json
    {
        if (std::isfinite(v))
            return v;
        if (std::isnan(v))
            return "nan";
        return v > 0 ? "inf" : "-inf";
    }
}

auto envelope(const char * kind) -> json
{
    return json{{"schema", schema}, {"kind", kind}};
}

auto to_json(const MosaicMatrix & m) -> json
{
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (auto e : m.row(r))
            row.push_back(static_cast<int>(e));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"a", m.alphabet().size()}, {"entries", std::move(rows)}};
}

auto to_json(const RegionMap & rm) -> json
{
    return json{{"a", rm.a}, {"row_offsets", rm.row_offsets}, {"col_offsets", rm.col_offsets},
        {"h_columns", rm.h_columns}, {"v_rows", rm.v_rows}};
}

auto to_json(const GridDiagram & g) -> json
{
    json cells = json::array();
    for (int i = 0; i < g.k(); ++i) {
        std::string row;
        for (int j = 0; j < g.k(); ++j)
            row += g.at(i, j) == Orientation::horizontal ? 'H' : 'V';
        cells.push_back(row);
    }
    return json{{"k", g.k()}, {"cells", cells}, {"row_counts", g.row_counts()}, {"col_counts", g.col_counts()}};
}

auto to_json(const Placement & p) -> json
{
    return json{{"row_idx", p.row_idx}, {"col_idx", p.col_idx}};
}

auto to_json(const VerifyReport & r, bool timing) -> json
{
    auto j = envelope("verify");
    j["k"] = r.k;
    j["a"] = r.a;
    j["is_omni"] = r.is_omni;
    j["covered"] = r.covered;
    j["targets"] = r.targets;
    j["missing_sample"] = r.missing_sample;
    j["submatrices_enumerated"] = r.submatrices_enumerated;
    if (timing)
        j["elapsed_seconds"] = r.elapsed.count();
    return j;
}

auto to_json(const SearchResult & r, bool timing) -> json
{
    json j{{"n", r.n}, {"status", to_string(r.status)}, {"nodes", r.nodes},
        {"exhausted_first_rows", r.exhausted_first_rows}, {"constructive", r.constructive}};
    j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
    if (timing)
        j["elapsed_seconds"] = r.elapsed.count();
    return j;
}

auto to_json(const bounds::BoundsReport & r) -> json
{
    auto j = envelope("bounds");
    j["n"] = r.n;
    j["k"] = r.k;
    j["a"] = r.a;
    j["log_mu"] = real(r.log_mu);
    j["log_delta_cap"] = real(r.log_delta_cap);
    j["log_delta_small"] = real(r.log_delta_small);
    j["log_missing_bound"] = real(r.log_missing_bound);
    j["log_total_bound"] = real(r.log_total_bound);
    j["certifies_existence"] = r.certifies_existence;
    j["advisory"] = r.advisory;
    j["preconditions"] = json{{"overlap_low_window", r.flags.overlap_low_window},
        {"overlap_high_window", r.flags.overlap_high_window}, {"critical_window", r.flags.critical_window},
        {"overlap_max_at_corner", r.flags.overlap_max_at_corner},
        {"neighbourhood_step", r.flags.neighbourhood_step}};
    return j;
}

auto to_json(const bounds::LemmaReport & r) -> json
{
    json verdicts = json::array();
    for (const auto & v : r.verdicts)
        verdicts.push_back(json{{"name", v.name}, {"applicable", v.applicable}, {"passed", v.passed}, {"detail", v.detail}});
    return json{{"n", r.n}, {"k", r.k}, {"a", r.a}, {"all_passed", r.all_passed()},
        {"argmax", json{{"r", r.argmax.r}, {"c", r.argmax.c}, {"log_phi", real(r.argmax.log_phi)}}},
        {"verdicts", verdicts}};
}

auto to_json(const MissingStats & s) -> json
{
    return json{{"trials", s.trials}, {"omni_count", s.omni_count}, {"p_omni", s.p_omni_hat},
        {"p_omni_stderr", s.p_omni_stderr}, {"ex_missing", s.ex_missing_hat}, {"ex_missing_stderr", s.ex_missing_stderr}};
}

auto to_json(const bounds::Rational & q) -> json
{
    return json{{"num", boost::multiprecision::numerator(q).str()}, {"den", boost::multiprecision::denominator(q).str()},
        {"value", q.convert_to<double>()}};
}

auto to_json(const ExactStats & s) -> json
{
    json per_target = json::array();
    for (std::uint64_t c = 0; c < s.missing_count.size(); ++c)
        per_target.push_back(json{{"code", c}, {"missing_count", s.missing_count[c]}});
    return json{{"n", s.n}, {"k", s.k}, {"a", s.a}, {"matrices", s.matrices}, {"omni_count", s.omni_count},
        {"p_omni", to_json(s.p_omni())}, {"ex_missing", to_json(s.expected_missing())}, {"per_target", per_target}};
}

auto to_json(const ConjectureTable & t) -> json
{
    json rows = json::array();
    for (const auto & r : t.rows)
        rows.push_back(json{{"code", r.code}, {"missing_count", r.missing_count},
            {"p_missing", static_cast<double>(r.missing_count) / static_cast<double>(t.matrices)},
            {"monochromatic", r.monochromatic}});
    return json{{"n", t.n}, {"k", t.k}, {"a", t.a}, {"matrices", t.matrices},
        {"monochromatic_maximal", t.monochromatic_maximal},
        {"max_ratio_to_monochromatic", real(t.max_ratio_to_monochromatic)}, {"table", rows}};
}

auto to_json(const SuenInputs & s) -> json
{
    return json{{"mu", s.mu}, {"delta_pairs", s.delta_pairs}, {"delta_max", s.delta_max}, {"placements", s.placements},
        {"overlapping_pairs", s.overlapping_pairs}, {"max_neighbours", s.max_neighbours},
        {"missing_bound", real(s.missing_bound())}};
}

} // namespace omnikit::reports
