#include <omnikit/cli.hpp>
#include <omnikit/detail/parallel.hpp>
#include <omnikit/reports.hpp>

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace omnikit::cli {

namespace {
    using reports::json;

    auto read_input(const std::string & path, std::istream & in) -> std::string
    {
        std::ostringstream ss;
        if (path == "-")
            ss << in.rdbuf();
        else {
            std::ifstream f(path, std::ios::binary);
            if (! f)
                throw Error("cannot open '" + path + "'");
            ss << f.rdbuf();
        }
        return ss.str();
    }

    void write_output(const std::string & path, const std::string & payload, std::ostream & out)
    {
        if (path.empty() || path == "-") {
            out << payload;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (! f)
            throw Error("cannot write '" + path + "'");
        f << payload;
    }

    auto dump(const json & j) -> std::string { return j.dump(2) + "\n"; }

    /// "0 1 1 0", "0,1,1,0" or "0110" -> square target matrix.
    auto parse_target(const std::string & text, Alphabet alphabet) -> MosaicMatrix
    {
        std::vector<Letter> entries;
        const bool has_separators = text.find_first_of(" ,;\t") != std::string::npos;
        if (has_separators) {
            std::string token;
            std::istringstream ss(text);
            while (std::getline(ss, token, ',')) {
                std::istringstream inner(token);
                std::string word;
                while (inner >> word) {
                    int v = 0;
                    try {
                        std::size_t used = 0;
                        v = std::stoi(word, &used);
                        if (used != word.size())
                            throw std::invalid_argument(word);
                    }
                    catch (const std::exception &) {
                        throw Error("invalid target entry '" + word + "'");
                    }
                    if (! alphabet.contains(v))
                        throw Error("target entry " + word + " outside alphabet");
                    entries.push_back(static_cast<Letter>(v));
                }
            }
        }
        else
            for (char ch : text) {
                if (! std::isdigit(static_cast<unsigned char>(ch)) || ! alphabet.contains(ch - '0'))
                    throw Error(std::string("invalid target entry '") + ch + "'");
                entries.push_back(static_cast<Letter>(ch - '0'));
            }
        auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(entries.size()))));
        if (k == 0 || k * k != entries.size())
            throw Error("target must have a square number of entries");
        return MosaicMatrix{k, k, alphabet, std::move(entries)};
    }

    auto parse_sequence(const std::string & text, int a) -> std::vector<Letter>
    {
        std::vector<Letter> seq;
        for (char ch : text) {
            if (ch == ' ' || ch == ',')
                continue;
            int v = std::isdigit(static_cast<unsigned char>(ch)) ? ch - '0'
                : std::isalpha(static_cast<unsigned char>(ch)) ? 10 + std::tolower(static_cast<unsigned char>(ch)) - 'a'
                                                                : -1;
            if (v < 0 || v >= a)
                throw Error(std::string("sequence symbol '") + ch + "' outside alphabet");
            seq.push_back(static_cast<Letter>(v));
        }
        return seq;
    }

    struct Common {
        unsigned workers = detail::default_workers();
        bool timing = false;
    };

    struct ConstructArgs {
        int k = 0, a = 0, d = 0;
        std::string shape = "square";
        std::string format = "text";
        std::string output;
    };

    struct VerifyArgs {
        std::string input = "-";
        int k = 0;
        double guard = std::ldexp(1.0, 32);
        std::size_t missing_limit = 32;
    };

    struct LocateArgs {
        int k = 0, a = 0;
        std::string target;
    };

    struct ContainsArgs {
        std::string input = "-";
        std::string target;
    };

    struct SearchArgs {
        int k = 0, a = 0;
        std::size_t n = 0;
        std::uint64_t max_nodes = 0;
        double max_seconds = 0;
        std::string checkpoint;
        bool no_symmetry = false, letter_pruning = false, sorted_rows = false, sorted_columns = false;
    };

    struct BoundsArgs {
        int k = 0, a = 0;
        std::uint64_t n = 0;
        bool lemmas = false;
    };

    struct SweepBoundsArgs {
        std::vector<int> k, a;
        std::uint64_t n_min = 0, n_max = 0, n_step = 1;
    };

    struct SampleArgs {
        std::size_t n = 0;
        int k = 0, a = 0;
        std::uint64_t trials = 1000, seed = 1;
    };

    struct ExactArgs {
        std::size_t n = 0;
        int k = 0, a = 0;
        bool table = false, suen = false;
    };

    struct OnedArgs {
        int k = 0, a = 2;
        std::uint64_t n = 0;
        std::string seq, file;
    };

    struct SweepArgs {
        int k = 0, a = 0;
        std::size_t n_min = 0, n_max = 0;
        std::uint64_t trials = 1000, seed = 1;
    };

    auto do_construct(const ConstructArgs & c, std::ostream & out) -> int
    {
        Alphabet alphabet{c.a};
        if (c.d != 0) {
            auto j = reports::envelope("higher_dim_estimate");
            j["k"] = c.k;
            j["a"] = c.a;
            j["d"] = c.d;
            j["side_estimate"] = higher_dim_side_estimate(c.k, c.a, c.d);
            j["constructive"] = false;
            write_output("", dump(j), out);
            return exit_code::ok;
        }

        std::optional<GridDiagram> grid;
        MosaicMatrix m{1, 1, alphabet};
        std::optional<RegionMap> regions;
        if (c.shape == "square")
            m = square_omnimosaic(c.k, alphabet);
        else if (c.shape == "regions") {
            grid = canonical_grid(c.k);
            auto built = build_mosaic(*grid, alphabet);
            m = std::move(built.matrix);
            regions = std::move(built.regions);
        }
        else {
            grid = GridDiagram::all_horizontal(c.k);
            auto built = build_mosaic(*grid, alphabet);
            m = std::move(built.matrix);
            regions = std::move(built.regions);
        }

        if (c.format == "text") {
            write_output(c.output, serialize_matrix(m), out);
            return exit_code::ok;
        }
        auto j = reports::envelope("construct");
        j["k"] = c.k;
        j["a"] = c.a;
        j["shape"] = c.shape;
        j["matrix"] = reports::to_json(m);
        if (! grid) {
            grid = canonical_grid(c.k);
            regions = region_map(*grid, alphabet);
        }
        j["grid"] = reports::to_json(*grid);
        j["regions"] = reports::to_json(*regions);
        write_output(c.output, dump(j), out);
        return exit_code::ok;
    }

    auto do_verify(const VerifyArgs & v, const Common & common, std::istream & in, std::ostream & out,
        std::ostream & err) -> int
    {
        auto m = parse_matrix(read_input(v.input, in));
        VerifyOptions opts;
        opts.coverage_guard = static_cast<std::uint64_t>(v.guard);
        opts.missing_limit = v.missing_limit;
        opts.workers = common.workers;
        auto report = is_omnimosaic(m, v.k, opts);
        out << dump(reports::to_json(report, common.timing));
        if (! report.is_omni)
            err << "not an omnimosaic: " << report.targets - report.covered << " of " << report.targets
                << " targets missing\n";
        return report.is_omni ? exit_code::ok : exit_code::negative;
    }

    auto do_locate(const LocateArgs & l, std::ostream & out) -> int
    {
        Alphabet alphabet{l.a};
        auto target = parse_target(l.target, alphabet);
        if (target.rows() != static_cast<std::size_t>(l.k))
            throw Error("target is " + std::to_string(target.rows()) + "x" + std::to_string(target.rows()) +
                ", expected k=" + std::to_string(l.k));
        auto grid = canonical_grid(l.k);
        auto built = build_mosaic(grid, alphabet);
        auto p = locate(built.regions, grid, target);
        auto j = reports::envelope("locate");
        j["k"] = l.k;
        j["a"] = l.a;
        j["mosaic_rows"] = built.matrix.rows();
        j["mosaic_cols"] = built.matrix.cols();
        j["placement"] = reports::to_json(p);
        j["verified"] = verify_placement(built.matrix, p, target);
        out << dump(j);
        return exit_code::ok;
    }

    auto do_contains(const ContainsArgs & c, const Common & common, std::istream & in, std::ostream & out,
        std::ostream & err) -> int
    {
        auto m = parse_matrix(read_input(c.input, in));
        auto target = parse_target(c.target, m.alphabet());
        auto p = contains_target(m, target, common.workers);
        auto j = reports::envelope("contains");
        j["found"] = p.has_value();
        j["placement"] = p ? reports::to_json(*p) : json(nullptr);
        out << dump(j);
        if (! p)
            err << "target not present\n";
        return p ? exit_code::ok : exit_code::negative;
    }

    auto do_search(const SearchArgs & s, const Common & common, std::ostream & out, std::ostream & err) -> int
    {
        Alphabet alphabet{s.a};
        SearchBudget budget;
        if (s.max_nodes)
            budget.max_nodes = s.max_nodes;
        if (s.max_seconds > 0)
            budget.max_time = std::chrono::duration<double>(s.max_seconds);
        SearchOptions opts;
        opts.workers = common.workers;
        opts.symmetry_breaking = ! s.no_symmetry;
        opts.letter_pruning = s.letter_pruning;
        opts.assume_sorted_rows = s.sorted_rows;
        opts.assume_sorted_columns = s.sorted_columns;
        if (s.letter_pruning || s.sorted_rows || s.sorted_columns)
            err << "warning: unproven pruning enabled; exhausted_none is not a proof\n";

        auto j = reports::envelope("search");
        j["k"] = s.k;
        j["a"] = s.a;
        std::vector<SearchResult> trace;
        if (s.n != 0) {
            if (! s.checkpoint.empty()) {
                opts.skip_first_rows = read_checkpoint(s.checkpoint);
                opts.checkpoint_path = s.checkpoint;
            }
            trace.push_back(exists_omnimosaic(s.n, s.k, alphabet, budget, opts));
        }
        else
            trace = min_omnimosaic_n(s.k, alphabet, budget, opts);

        json results = json::array();
        for (const auto & r : trace) {
            err << "n=" << r.n << ": " << to_string(r.status) << " after " << r.nodes << " nodes\n";
            results.push_back(reports::to_json(r, common.timing));
        }
        j["results"] = results;
        const auto & last = trace.back();
        if (s.n == 0 && last.status == SearchStatus::found)
            j["omega"] = last.n;
        out << dump(j);
        switch (last.status) {
        case SearchStatus::found: return exit_code::ok;
        case SearchStatus::exhausted_none: return exit_code::negative;
        case SearchStatus::budget_exceeded: return exit_code::budget;
        }
        return exit_code::usage;
    }

    /// Integer-valued bounds that overflow 64 bits are reported as null.
    template <typename F>
    auto or_null(F f) -> json
    {
        try {
            return json(f());
        }
        catch (const Error &) {
            return json(nullptr);
        }
    }

    auto do_bounds(const BoundsArgs & b, std::ostream & out) -> int
    {
        std::optional<bounds::ThresholdN> threshold;
        try {
            threshold = bounds::suen_threshold_n(b.k, b.a);
        }
        catch (const Error &) {
            if (b.n == 0)
                throw;
        }
        const auto n = b.n != 0 ? b.n : threshold->estimate;
        auto payload = reports::to_json(bounds::suen_report(n, b.k, b.a));
        payload["pigeonhole_min_n"] = or_null([&] { return bounds::pigeonhole_min_n(b.k, b.a); });
        payload["asymptotic_lower"] = bounds::asymptotic_lower(b.k, b.a);
        payload["construction_upper"] = or_null([&] { return bounds::construction_upper(b.k, b.a); });
        payload["ramsey_n0"] = bounds::ramsey_n0(b.k);
        payload["threshold_n_estimate"] = threshold ? json(threshold->estimate) : json(nullptr);
        payload["threshold_n_theorem_form"] = threshold ? json(threshold->theorem_form) : json(nullptr);
        if (b.lemmas)
            payload["lemmas"] = reports::to_json(bounds::check_lemma_properties(n, b.k, b.a));
        out << dump(payload);
        return exit_code::ok;
    }

    auto do_bounds_sweep(const SweepBoundsArgs & s, std::ostream & out) -> int
    {
        out << "k,a,n,log_mu,log_total_bound,certifies\n";
        out << std::setprecision(10);
        for (int k : s.k)
            for (int a : s.a) {
                std::vector<std::uint64_t> ns;
                if (s.n_min == 0)
                    ns.push_back(bounds::suen_threshold_n(k, a).estimate);
                else
                    for (auto n = s.n_min; n <= std::max(s.n_min, s.n_max); n += std::max<std::uint64_t>(1, s.n_step))
                        ns.push_back(n);
                for (auto n : ns) {
                    if (n < static_cast<std::uint64_t>(k))
                        continue;
                    auto r = bounds::suen_report(n, k, a);
                    out << k << ',' << a << ',' << n << ',' << r.log_mu << ',' << r.log_total_bound << ','
                        << (r.certifies_existence ? "true" : "false") << '\n';
                }
            }
        return exit_code::ok;
    }

    auto do_sample(const SampleArgs & s, const Common & common, std::ostream & out) -> int
    {
        ExperimentConfig cfg;
        cfg.n = s.n;
        cfg.k = s.k;
        cfg.a = s.a;
        cfg.trials = s.trials;
        cfg.seed = s.seed;
        cfg.workers = common.workers;
        auto stats = estimate(cfg);
        auto j = reports::envelope("sample");
        j["n"] = s.n;
        j["k"] = s.k;
        j["a"] = s.a;
        j["seed"] = s.seed;
        j["stats"] = reports::to_json(stats);
        out << dump(j);
        return exit_code::ok;
    }

    auto do_sweep(const SweepArgs & s, const Common & common, std::ostream & out) -> int
    {
        out << "n,k,a,trials,p_omni,stderr,ex_missing,stderr\n";
        out << std::setprecision(10);
        for (auto n = s.n_min; n <= s.n_max; ++n) {
            ExperimentConfig cfg;
            cfg.n = n;
            cfg.k = s.k;
            cfg.a = s.a;
            cfg.trials = s.trials;
            cfg.seed = s.seed;
            cfg.workers = common.workers;
            auto st = estimate(cfg);
            out << n << ',' << s.k << ',' << s.a << ',' << s.trials << ',' << st.p_omni_hat << ',' << st.p_omni_stderr
                << ',' << st.ex_missing_hat << ',' << st.ex_missing_stderr << '\n';
        }
        return exit_code::ok;
    }

    auto do_exact(const ExactArgs & e, const Common & common, std::ostream & out) -> int
    {
        Alphabet alphabet{e.a};
        auto stats = exact_enumeration(e.n, e.k, alphabet, common.workers);
        auto j = reports::envelope("exact");
        j["stats"] = reports::to_json(stats);
        if (e.table)
            j["conjecture_table"] = reports::to_json(conjecture_table(stats));
        if (e.suen) {
            auto inputs = exact_suen_inputs(e.n, e.k, e.a);
            auto s = reports::to_json(inputs);
            const auto all_zero = stats.p_missing(0).convert_to<double>();
            s["p_monochromatic_missing"] = all_zero;
            s["bound_holds"] = inputs.missing_bound() >= all_zero;
            j["suen"] = s;
        }
        out << dump(j);
        return exit_code::ok;
    }

    auto do_oned(const OnedArgs & o, std::istream & in, std::ostream & out) -> int
    {
        auto j = reports::envelope("oned");
        if (! o.file.empty()) {
            // Letters a-z after case folding; everything else is skipped.
            auto text = read_input(o.file, in);
            std::vector<Letter> seq;
            for (unsigned char ch : text)
                if (std::isalpha(ch) && std::tolower(ch) >= 'a' && std::tolower(ch) <= 'z')
                    seq.push_back(static_cast<Letter>(std::tolower(ch) - 'a'));
            const auto collections = oned_count_collections(seq, 26);
            j["alphabet"] = "a-z";
            j["a"] = 26;
            j["length"] = seq.size();
            j["collections"] = collections;
            j["max_k"] = collections;
            out << dump(j);
            return exit_code::ok;
        }
        j["a"] = o.a;
        if (! o.seq.empty()) {
            auto seq = parse_sequence(o.seq, o.a);
            const auto collections = oned_count_collections(seq, o.a);
            j["length"] = seq.size();
            j["collections"] = collections;
            if (o.k > 0) {
                j["k"] = o.k;
                j["is_omni"] = oned_is_omni(seq, o.k, o.a);
                j["missing"] = oned_missing_count(seq, o.k, o.a);
            }
            out << dump(j);
            return oned_is_omni(seq, std::max(o.k, 0), o.a) ? exit_code::ok : exit_code::negative;
        }
        j["threshold_ratio"] = bounds::oned_threshold(o.a);
        j["expected_missing_threshold_ratio"] = bounds::oned_expected_missing_threshold_ratio(o.a);
        if (o.n > 0 && o.k > 0) {
            j["n"] = o.n;
            j["k"] = o.k;
            j["expected_missing"] = bounds::oned_expected_missing(o.n, o.k, o.a);
        }
        out << dump(j);
        return exit_code::ok;
    }
}

auto run(const std::vector<std::string> & args, std::istream & in, std::ostream & out, std::ostream & err) -> int
{
    CLI::App app{"omnikit: construct, verify, search and bound omnimosaics", "omnikit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");
    app.fallthrough();

    Common common;
    app.add_option("--workers", common.workers, "Worker threads")->check(CLI::Range(1U, 1024U));
    app.add_flag("--timing", common.timing, "Include elapsed times in JSON payloads");

    ConstructArgs construct_args;
    auto * construct = app.add_subcommand("construct", "Build an omnimosaic (v1 matrix on stdout)");
    construct->add_option("--k", construct_args.k, "Target side")->required()->check(CLI::Range(1, 64));
    construct->add_option("--a", construct_args.a, "Alphabet size")->required()->check(CLI::Range(2, 256));
    auto * shape = construct->add_option("--shape", construct_args.shape, "square | regions | thin")
                       ->check(CLI::IsMember({"square", "regions", "thin"}));
    auto * format = construct->add_option("--format", construct_args.format, "text | json")
                        ->check(CLI::IsMember({"text", "json"}));
    auto * output = construct->add_option("-o,--output", construct_args.output, "Output file");
    construct->add_option("--d", construct_args.d, "Report the d-dimensional size estimate instead")
        ->check(CLI::Range(2, 16))
        ->excludes(shape)
        ->excludes(format)
        ->excludes(output);

    VerifyArgs verify_args;
    auto * verify = app.add_subcommand("verify", "Check the omnimosaic property of a v1 matrix");
    verify->add_option("file", verify_args.input, "Matrix file, - for stdin");
    verify->add_option("--k", verify_args.k, "Target side")->required()->check(CLI::Range(1, 64));
    verify->add_option("--guard", verify_args.guard, "Largest target space for a coverage bitset");
    verify->add_option("--missing-limit", verify_args.missing_limit, "Missing codes to report");

    LocateArgs locate_args;
    auto * locate_cmd = app.add_subcommand("locate", "Place a target in the canonical construction");
    locate_cmd->add_option("--k", locate_args.k, "Target side")->required()->check(CLI::Range(1, 16));
    locate_cmd->add_option("--a", locate_args.a, "Alphabet size")->required()->check(CLI::Range(2, 10));
    locate_cmd->add_option("--target", locate_args.target, "Row-major target entries")->required();

    ContainsArgs contains_args;
    auto * contains = app.add_subcommand("contains", "Find a target in a v1 matrix");
    contains->add_option("file", contains_args.input, "Matrix file, - for stdin");
    contains->add_option("--target", contains_args.target, "Row-major target entries")->required();

    SearchArgs search_args;
    auto * search = app.add_subcommand("search", "Exact search for the smallest omnimosaic");
    search->add_option("--k", search_args.k, "Target side")->required()->check(CLI::Range(1, 8));
    search->add_option("--a", search_args.a, "Alphabet size")->required()->check(CLI::Range(2, 32));
    auto * search_n = search->add_option("--n", search_args.n, "Only decide this size")->check(CLI::Range(1, 64));
    search->add_option("--max-nodes", search_args.max_nodes, "Node budget");
    search->add_option("--max-seconds", search_args.max_seconds, "Time budget");
    search->add_option("--checkpoint", search_args.checkpoint, "File of exhausted first rows")->needs(search_n);
    search->add_flag("--no-symmetry", search_args.no_symmetry, "Disable symmetry breaking");
    search->add_flag("--letter-pruning", search_args.letter_pruning, "Unproven: every row and column uses every letter");
    search->add_flag("--assume-sorted-rows", search_args.sorted_rows, "Unsound: nondecreasing rows");
    search->add_flag("--assume-sorted-columns", search_args.sorted_columns, "Unsound: nondecreasing columns");

    BoundsArgs bounds_args;
    auto * bounds_cmd = app.add_subcommand("bounds", "Closed-form bounds (JSON), or 'bounds sweep' (CSV)");
    bounds_cmd->require_subcommand(0, 1);
    auto * bounds_k = bounds_cmd->add_option("--k", bounds_args.k, "Target side")->check(CLI::Range(2, 100000));
    auto * bounds_a = bounds_cmd->add_option("--a", bounds_args.a, "Alphabet size")->check(CLI::Range(2, 1000000));
    bounds_cmd->add_option("--n", bounds_args.n, "Matrix side (default: threshold estimate)");
    bounds_cmd->add_flag("--lemmas", bounds_args.lemmas, "Include overlap-lemma verdicts at n");

    SweepBoundsArgs bsweep_args;
    auto * bsweep = bounds_cmd->add_subcommand("sweep", "CSV of bounds over k, a and n");
    bsweep->add_option("--k", bsweep_args.k, "Target sides")->required()->check(CLI::Range(2, 100000));
    bsweep->add_option("--a", bsweep_args.a, "Alphabet sizes")->required()->check(CLI::Range(2, 1000000));
    bsweep->add_option("--n-min", bsweep_args.n_min, "First n (default: threshold estimate only)");
    bsweep->add_option("--n-max", bsweep_args.n_max, "Last n");
    bsweep->add_option("--n-step", bsweep_args.n_step, "Step in n");

    SampleArgs sample_args;
    auto * sample = app.add_subcommand("sample", "Monte-Carlo estimate over random matrices");
    sample->add_option("--n", sample_args.n, "Matrix side")->required()->check(CLI::Range(1, 4096));
    sample->add_option("--k", sample_args.k, "Target side")->required()->check(CLI::Range(1, 16));
    sample->add_option("--a", sample_args.a, "Alphabet size")->required()->check(CLI::Range(2, 256));
    sample->add_option("--trials", sample_args.trials, "Random matrices")->check(CLI::Range(std::uint64_t{1}, UINT64_MAX));
    sample->add_option("--seed", sample_args.seed, "Seed");

    ExactArgs exact_args;
    auto * exact = app.add_subcommand("exact", "Exact statistics over all n x n matrices");
    exact->add_option("--n", exact_args.n, "Matrix side")->required()->check(CLI::Range(1, 5));
    exact->add_option("--k", exact_args.k, "Target side")->required()->check(CLI::Range(1, 5));
    exact->add_option("--a", exact_args.a, "Alphabet size")->required()->check(CLI::Range(2, 256));
    exact->add_flag("--table", exact_args.table, "Per-target missing probabilities, sorted");
    exact->add_flag("--suen", exact_args.suen, "Compare the correlation bound with the exact value");

    OnedArgs oned_args;
    auto * oned = app.add_subcommand("oned", "One-dimensional omni sequences");
    oned->add_option("--a", oned_args.a, "Alphabet size")->check(CLI::Range(2, 36));
    oned->add_option("--k", oned_args.k, "Word length")->check(CLI::Range(1, 64));
    oned->add_option("--n", oned_args.n, "Sequence length for the expected missing count");
    auto * oned_seq = oned->add_option("--seq", oned_args.seq, "Sequence of letters 0-9a-z");
    oned->add_option("--file", oned_args.file, "Text file, measured over letters a-z")->excludes(oned_seq);

    SweepArgs sweep_args;
    auto * sweep = app.add_subcommand("sweep", "CSV of Monte-Carlo estimates over a range of n");
    sweep->add_option("--k", sweep_args.k, "Target side")->required()->check(CLI::Range(1, 16));
    sweep->add_option("--a", sweep_args.a, "Alphabet size")->required()->check(CLI::Range(2, 256));
    sweep->add_option("--n-min", sweep_args.n_min, "First n")->required()->check(CLI::Range(1, 4096));
    sweep->add_option("--n-max", sweep_args.n_max, "Last n")->required()->check(CLI::Range(1, 4096));
    sweep->add_option("--trials", sweep_args.trials, "Random matrices per n")->check(CLI::Range(std::uint64_t{1}, UINT64_MAX));
    sweep->add_option("--seed", sweep_args.seed, "Seed");

    std::vector<std::string> argv_storage{"omnikit"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto & a : argv_storage)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError & e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        if (*construct)
            return do_construct(construct_args, out);
        if (*verify)
            return do_verify(verify_args, common, in, out, err);
        if (*locate_cmd)
            return do_locate(locate_args, out);
        if (*contains)
            return do_contains(contains_args, common, in, out, err);
        if (*search)
            return do_search(search_args, common, out, err);
        if (*bounds_cmd) {
            if (*bsweep)
                return do_bounds_sweep(bsweep_args, out);
            if (! *bounds_k || ! *bounds_a) {
                err << "bounds: --k and --a are required\n";
                return exit_code::usage;
            }
            return do_bounds(bounds_args, out);
        }
        if (*sample)
            return do_sample(sample_args, common, out);
        if (*exact)
            return do_exact(exact_args, common, out);
        if (*oned)
            return do_oned(oned_args, in, out);
        if (*sweep)
            return do_sweep(sweep_args, common, out);
    }
    catch (const std::exception & e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }
    return exit_code::usage;
}

} // namespace omnikit::cli
