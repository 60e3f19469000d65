#include <CLI11.hpp>

#include <qv/bosonic.hpp>
#include <qv/characters.hpp>
#include <qv/fermionic.hpp>
#include <qv/nmsystem.hpp>
#include <qv/qgauss.hpp>
#include <qv/qlaurent.hpp>
#include <qv/verify.hpp>

#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

namespace {

using qv::Exp;
using qv::VerifyReport;

constexpr const char* kSuites[] = {
    "trinomial-properties", "binomial-recurrences", "nm-oracle",
    "even-identities",      "odd-identities",       "fermionic-recurrences",
    "bosonic-recurrences",  "bosonic-relations",    "character-identities",
    "appendix-a"};

struct EvalOpts {
    std::string object;
    std::string format = "text";
    std::string kind = "plain";        // bose: plain | tilde | prime
    std::string variant = "standard";  // binom: standard | modified
    std::optional<int> p, a, b, i, r;
    std::optional<long long> L, A, n, m, s;
    std::optional<long long> cutoff;  // integer q powers
};

struct VerifyOpts {
    std::string suite = "all";
    std::string format = "text";
    std::optional<std::string> p_range;
    std::optional<std::string> config;
    long long l_max = 8;
    long long cutoff = 20;  // integer q powers
    int jobs = 1;
};

[[noreturn]] void usage_error(const std::string& msg) {
    throw CLI::ValidationError(msg);
}

long long need(const std::optional<long long>& v, const char* flag) {
    if (!v) usage_error(std::string("missing required flag --") + flag);
    return *v;
}

int need(const std::optional<int>& v, const char* flag) {
    if (!v) usage_error(std::string("missing required flag --") + flag);
    return *v;
}

// "4" -> [4,4]; "4..6" -> [4,6].
std::pair<int, int> parse_p_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int p = std::stoi(text);
            return {p, p};
        }
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        if (lo > hi) usage_error("--p range is empty: " + text);
        return {lo, hi};
    } catch (const std::logic_error&) {
        usage_error("cannot parse --p value: " + text);
    }
}

int run_eval(const EvalOpts& o) {
    std::string out;
    auto emit_laurent = [&](const qv::QLaurent& v) {
        out = o.format == "json" ? qv::to_json_string(v) : v.str();
    };
    auto emit_series = [&](const qv::QSeries& v) {
        out = o.format == "json" ? qv::to_json_string(v) : v.str();
    };

    if (o.object == "trinom") {
        const long long L = need(o.L, "L"), A = need(o.A, "A");
        const long long n = o.n.value_or(0);
        if (o.cutoff)
            emit_series(qv::qtrinom_truncated(L, A, n, 4 * *o.cutoff));
        else
            emit_laurent(qv::qtrinom(L, A, n));
    } else if (o.object == "binom") {
        const long long n = need(o.n, "n"), m = need(o.m, "m");
        if (o.variant == "modified")
            emit_laurent(qv::qbinom_modified(n, m));
        else if (o.variant == "standard")
            emit_laurent(qv::qbinom(n, m));
        else
            usage_error("--variant must be standard or modified");
    } else if (o.object == "fermi") {
        const auto sys = qv::build_params(need(o.p, "p"), need(o.a, "a"),
                                          need(o.b, "b"), o.i.value_or(0),
                                          need(o.L, "L"));
        if (o.cutoff)
            emit_series(qv::fermi_truncated(sys, 4 * *o.cutoff));
        else
            emit_laurent(qv::fermi(sys));
    } else if (o.object == "bose") {
        const int p = need(o.p, "p"), a = need(o.a, "a"), b = need(o.b, "b");
        const long long L = need(o.L, "L");
        qv::BoseKind kind;
        long long s_default = 0;
        if (o.kind == "plain") {
            kind = qv::BoseKind::plain;
            s_default = b + 1;
        } else if (o.kind == "tilde") {
            kind = qv::BoseKind::tilde;
            s_default = b + 2;
        } else if (o.kind == "prime") {
            kind = qv::BoseKind::prime;
        } else {
            usage_error("--kind must be plain, tilde or prime");
        }
        emit_laurent(qv::bose(kind, p, a, b, o.s.value_or(s_default), L));
    } else if (o.object == "chi") {
        emit_series(qv::chi(need(o.p, "p"), need(o.r, "r"),
                            static_cast<int>(need(o.s, "s")),
                            4 * o.cutoff.value_or(20)));
    } else {
        usage_error("unknown object: " + o.object +
                    " (expected trinom, binom, fermi, bose or chi)");
    }
    std::cout << out << std::endl;
    return 0;
}

struct Task {
    std::string suite;
    std::function<VerifyReport()> run;
};

void add_suite_tasks(std::vector<Task>& tasks, const std::string& suite,
                     const VerifyOpts& o) {
    const long long L = o.l_max;
    const Exp cutoff4 = 4 * o.cutoff;
    auto p_bounds = [&](int def_lo, int def_hi) {
        return o.p_range ? parse_p_range(*o.p_range) : std::make_pair(def_lo, def_hi);
    };
    if (suite == "trinomial-properties") {
        tasks.push_back({suite, [L] { return qv::verify_trinomial_properties(L); }});
    } else if (suite == "binomial-recurrences") {
        tasks.push_back({suite, [] { return qv::verify_binomial_recurrences(); }});
    } else if (suite == "nm-oracle") {
        const auto [lo, hi] = p_bounds(4, 5);
        for (int p = lo; p <= hi; ++p)
            tasks.push_back({suite, [p, L] { return qv::verify_nm_oracle(p, L); }});
    } else if (suite == "even-identities" || suite == "odd-identities") {
        const int flavor = suite == "odd-identities";
        const auto [lo, hi] = p_bounds(4, 6);
        for (int p = lo; p <= hi; ++p)
            tasks.push_back({suite, [p, flavor, L] {
                                 VerifyReport rep;
                                 rep.suite = flavor ? "odd-identities" : "even-identities";
                                 const int a_lo = flavor ? 2 : 1;
                                 const int a_hi = flavor ? p - 1 : p - 2;
                                 for (int a = a_lo; a <= a_hi; ++a)
                                     for (int b = 1; b <= p - 1; ++b)
                                         rep.merge(qv::verify_finitized(p, a, b, flavor, L));
                                 rep.sort_instances();
                                 return rep;
                             }});
    } else if (suite == "fermionic-recurrences") {
        const auto [lo, hi] = p_bounds(4, 6);
        for (int p = lo; p <= hi; ++p)
            tasks.push_back({suite, [p, L] {
                                 VerifyReport rep = qv::verify_even_recurrences(
                                     p, static_cast<int>(L));
                                 rep.merge(qv::verify_odd_recurrences(
                                     p, static_cast<int>(L)));
                                 rep.sort_instances();
                                 return rep;
                             }});
    } else if (suite == "bosonic-recurrences") {
        const auto [lo, hi] = p_bounds(4, 6);
        for (int p = lo; p <= hi; ++p)
            tasks.push_back({suite, [p, L] {
                                 VerifyReport rep;
                                 rep.suite = "bosonic-recurrences";
                                 for (int a = 1; a <= p - 1; ++a)
                                     rep.merge(qv::verify_bosonic_recurrences(p, a, L));
                                 rep.sort_instances();
                                 return rep;
                             }});
    } else if (suite == "bosonic-relations") {
        const auto [lo, hi] = p_bounds(4, 6);
        for (int p = lo; p <= hi; ++p)
            tasks.push_back({suite, [p, L] { return qv::verify_bosonic_relations(p, L); }});
    } else if (suite == "character-identities") {
        const auto [lo, hi] = p_bounds(4, 6);
        for (int p = lo; p <= hi; ++p)
            tasks.push_back(
                {suite, [p, cutoff4] { return qv::verify_character_identities(p, cutoff4); }});
    } else if (suite == "appendix-a") {
        tasks.push_back({suite, [L] { return qv::verify_alt_binomial_sums(L, L, L); }});
        // The negative-sector window sums grow quickly with L; the identity
        // content is already complete at small sizes.
        const auto [lo, hi] = p_bounds(4, 6);
        const long long Lmod = std::min<long long>(L, 3);
        for (int p = lo; p <= hi; ++p)
            tasks.push_back(
                {suite, [p, Lmod] { return qv::verify_modified_reduction(p, Lmod); }});
    } else {
        usage_error("unknown suite: " + suite);
    }
}

int run_verify(const VerifyOpts& o) {
    std::vector<std::string> selected;
    if (o.suite == "all")
        selected.assign(std::begin(kSuites), std::end(kSuites));
    else
        selected.push_back(o.suite);

    std::vector<Task> tasks;
    for (const auto& s : selected) add_suite_tasks(tasks, s, o);

    std::vector<VerifyReport> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
            try {
                results[t] = tasks[t].run();
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    const int jobs = std::max(1, std::min<int>(o.jobs, static_cast<int>(tasks.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    // Merge task results per suite in fixed task order, then emit reports in
    // the canonical suite order; output is identical for every --jobs value.
    bool ok = true;
    for (const auto& name : selected) {
        VerifyReport merged;
        merged.suite = name;
        for (std::size_t t = 0; t < tasks.size(); ++t)
            if (tasks[t].suite == name) merged.merge(std::move(results[t]));
        merged.sort_instances();
        ok = ok && merged.all_pass();
        if (o.format == "json")
            std::cout << merged.to_json_line() << "\n";
        else
            std::cout << merged.to_text();
        std::cout.flush();
    }
    return ok ? 0 : 1;
}

// Config file defaults: flags the user typed win over file values.
void apply_config(const CLI::App& sub, VerifyOpts& o) {
    if (!o.config) return;
    std::ifstream in(*o.config);
    if (!in) usage_error("cannot open config file: " + *o.config);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        usage_error("cannot parse config file: " + std::string(e.what()));
    }
    auto unset = [&](const char* flag) { return sub.get_option(flag)->count() == 0; };
    if (doc.contains("suite") && unset("--suite")) o.suite = doc["suite"].get<std::string>();
    if (doc.contains("p") && unset("--p")) {
        const auto& v = doc["p"];
        o.p_range = v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>());
    }
    if (doc.contains("l-max") && unset("--l-max")) o.l_max = doc["l-max"].get<long long>();
    if (doc.contains("cutoff") && unset("--cutoff")) o.cutoff = doc["cutoff"].get<long long>();
    if (doc.contains("jobs") && unset("--jobs")) o.jobs = doc["jobs"].get<int>();
    if (doc.contains("format") && unset("--format")) o.format = doc["format"].get<std::string>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact q-series evaluator and identity verifier"};
    app.require_subcommand(1);

    EvalOpts eo;
    auto* eval = app.add_subcommand("eval", "Evaluate one object to stdout");
    eval->add_option("object", eo.object, "trinom | binom | fermi | bose | chi")
        ->required();
    eval->add_option("--p", eo.p, "model size parameter");
    eval->add_option("--a", eo.a, "first index");
    eval->add_option("--b", eo.b, "second index");
    eval->add_option("--i", eo.i, "flavor, 0 or 1 (default 0)");
    eval->add_option("--r", eo.r, "character row index");
    eval->add_option("--L", eo.L, "system size");
    eval->add_option("--A", eo.A, "trinomial offset");
    eval->add_option("--n", eo.n, "trinomial depth / binomial top");
    eval->add_option("--m", eo.m, "binomial bottom");
    eval->add_option("--s", eo.s, "column index");
    eval->add_option("--cutoff", eo.cutoff,
                     "truncate at this power of q (chi default 20)");
    eval->add_option("--kind", eo.kind, "bose kind: plain | tilde | prime");
    eval->add_option("--variant", eo.variant, "binom variant: standard | modified");
    eval->add_option("--format", eo.format, "text | json (default text)")
        ->check(CLI::IsMember({"text", "json"}));

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "Run verification suites");
    verify->add_option("--suite", vo.suite, "suite name or 'all' (default all)");
    verify->add_option("--p", vo.p_range, "model size: N or LO..HI (suite default)");
    verify->add_option("--l-max", vo.l_max, "largest system size (default 8)");
    verify->add_option("--cutoff", vo.cutoff,
                       "series cutoff as a power of q (default 20)");
    verify->add_option("--jobs", vo.jobs, "worker threads (default 1)")
        ->check(CLI::PositiveNumber);
    verify->add_option("--format", vo.format, "text | json (default text)")
        ->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--config", vo.config, "JSON file with option defaults");

    try {
        app.parse(argc, argv);
        if (eval->parsed()) return run_eval(eo);
        apply_config(*verify, vo);
        if (vo.l_max < 0) usage_error("--l-max must be nonnegative");
        if (vo.cutoff < 0) usage_error("--cutoff must be nonnegative");
        return run_verify(vo);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
}
