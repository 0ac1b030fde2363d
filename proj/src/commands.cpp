#include <wcoj/commands.hpp>

#include <wcoj/csv.hpp>
#include <wcoj/enumerator.hpp>
#include <wcoj/error.hpp>
#include <wcoj/estimators.hpp>
#include <wcoj/oracle.hpp>
#include <wcoj/query_spec.hpp>
#include <wcoj/sampler.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>


namespace wcoj::cli {

namespace {

using nlohmann::json;

struct Instance
{
    QuerySpec spec;
    JoinQuery q;
};

Instance load_instance(const std::filesystem::path &path)
{
    Instance in;
    in.spec = load_query_spec(path);
    auto tables = load_tables(in.spec);
    in.q = encode_instance(tables, query_order(in.spec, tables));
    return in;
}

std::vector<std::string> split_names(const std::string &list)
{
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string name;
    while (std::getline(ss, name, ','))
        if (not name.empty())
            out.push_back(name);
    return out;
}

/// Resolves --order: a permutation of the query variables.
std::vector<VarId> parse_order(const JoinQuery &q, const std::string &list)
{
    auto order = resolve_vars(q, split_names(list));
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != q.default_order())
        throw InvalidInput("--order must list every query variable exactly once");
    return order;
}

/// Throws OrderError describing why `order` (if given) or every order fails cs.
std::vector<VarId> constrained_order(const ConstraintSet &cs, const std::optional<std::vector<VarId>> &order)
{
    auto compat = compatible_order(cs);
    if (auto *cycle = std::get_if<Cycle>(&compat))
        throw OrderError("degree constraints are cyclic: " + format_cycle(cs, *cycle));
    if (not order)
        return std::get<std::vector<VarId>>(compat);
    std::vector<std::size_t> position(cs.variables.size());
    for (std::size_t i = 0; i != order->size(); ++i)
        position[(*order)[i]] = i;
    for (auto [u, v] : dependency_graph(cs).edges)
        if (position[u] > position[v])
            throw OrderError("order places " + cs.variables[v] + " before " + cs.variables[u]
                             + ", but the constraints need " + cs.variables[u] + " -> " + cs.variables[v]);
    return *order;
}

std::vector<std::string> header_for(const JoinQuery &q, std::span<const VarId> order)
{
    std::vector<std::string> h;
    for (auto v : order)
        h.push_back(q.order[v]);
    return h;
}

std::vector<std::string> decode_row(const JoinQuery &q, std::span<const VarId> order, std::span<const Code> answer)
{
    std::vector<std::string> row;
    for (auto v : order)
        row.push_back(q.dictionary.decode(answer[v]));
    return row;
}

/// Runs `body` with the stream for --output, or with `out`.
template<typename Body>
void with_output(const std::optional<std::filesystem::path> &path, std::ostream &out, Body &&body)
{
    if (not path) {
        body(out);
        return;
    }
    std::ofstream f(*path, std::ios::binary);
    if (not f)
        throw InvalidInput("cannot write '" + path->string() + "'");
    body(f);
}

void write_json(const std::filesystem::path &path, const json &j)
{
    std::ofstream f(path, std::ios::binary);
    if (not f)
        throw InvalidInput("cannot write '" + path.string() + "'");
    f << j.dump(2) << '\n';
}

/// Maps exceptions to exit codes.
template<typename Body>
int guarded(std::ostream &err, Body &&body)
{
    try {
        return body();
    } catch (const InvalidInput &e) {
        err << "error: " << e.what() << '\n';
        return exit_code::bad_input;
    } catch (const OrderError &e) {
        err << "error: " << e.what() << '\n';
        return exit_code::incompatible;
    } catch (const InfeasibleCover &e) {
        err << "error: infeasible cover: " << e.what() << '\n';
        return exit_code::incompatible;
    } catch (const TooLarge &e) {
        err << "error: " << e.what() << " (supply \"weights\" in the spec)\n";
        return exit_code::bad_input;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    }
}

std::vector<std::uint64_t> relation_sizes(const JoinQuery &q)
{
    std::vector<std::uint64_t> sizes;
    for (const auto &r : q.relations)
        sizes.push_back(std::max<std::uint64_t>(1, r.size()));
    return sizes;
}

Hypergraph hypergraph(const JoinQuery &q)
{
    Hypergraph h{q.order, {}};
    for (const auto &r : q.relations)
        h.edges.push_back(r.vars());
    return h;
}

/// Explicit weights if the spec has the right number, else the LP optimum.
CoverSolution agm_cover(const Instance &in)
{
    const auto h = hypergraph(in.q);
    const auto sizes = relation_sizes(in.q);
    if (in.spec.weights and in.spec.weights->size() == h.edges.size()) {
        FractionalCover w{*in.spec.weights};
        if (auto x = uncovered_by(in.q.num_vars(), h.edges, w))
            throw InfeasibleCover(in.q.order[*x]);
        return {w, log_bound(w, sizes)};
    }
    return solve_cover_card(h, sizes);
}

/// Explicit constraints followed by default cardinalities.
ConstraintSet full_constraints(const Instance &in)
{
    auto cs = build_constraints(in.spec, in.q);
    add_default_cardinalities(cs, in.q);
    return cs;
}

CoverSolution pm_cover(const Instance &in, const ConstraintSet &cs)
{
    std::vector<std::uint64_t> bounds;
    for (const auto &dc : cs.constraints)
        bounds.push_back(dc.bound);
    if (in.spec.weights) {
        auto w = *in.spec.weights;
        if (w.size() == in.spec.constraints.size())
            w.resize(cs.constraints.size(), Rational(0));
        if (w.size() == cs.constraints.size()) {
            FractionalCover cover{w};
            if (auto x = uncovered_by(in.q.num_vars(), cover_sets(cs), cover))
                throw InfeasibleCover(in.q.order[*x]);
            return {cover, log_bound(cover, bounds)};
        }
    }
    return solve_cover_degree(cs);
}

std::string format_bound(double log2_bound)
{
    std::ostringstream os;
    os << std::setprecision(12) << log2_bound;
    return os.str();
}

std::string format_witness(const JoinQuery &q, const Tuple &t)
{
    if (t.empty())
        return "-";
    std::string out;
    for (const auto &b : t.bindings()) {
        if (not out.empty())
            out += ' ';
        out += q.order[b.var] + "=" + q.dictionary.decode(b.code);
    }
    return out;
}

}


int cmd_join(const JoinOptions &opts, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        const auto in = load_instance(opts.spec);
        const auto &q = in.q;

        std::optional<std::vector<VarId>> order;
        if (opts.order)
            order = parse_order(q, *opts.order);
        std::optional<ConstraintSet> cs;
        if (not in.spec.constraints.empty()) {
            cs = build_constraints(in.spec, q);
            order = constrained_order(*cs, order);
        }

        std::vector<Answer> answers;
        auto sink = [&](std::span<const Code> a) { answers.emplace_back(a.begin(), a.end()); };
        const auto start = std::chrono::steady_clock::now();
        EnumerationStats stats;
        std::vector<VarId> run_order;
        std::size_t bits = 0;
        if (opts.no_binarise) {
            run_order = order.value_or(q.default_order());
            stats = wcj(q, run_order, sink);
        } else {
            auto run = wcj_binarised(q, cs ? &*cs : nullptr, order, sink);
            stats = std::move(run.stats);
            run_order = std::move(run.order);
            bits = run.bits;
        }
        const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;

        with_output(opts.output, out, [&](std::ostream &os) {
            write_csv_row(os, header_for(q, run_order));
            for (const auto &a : answers)
                write_csv_row(os, decode_row(q, run_order, a));
        });

        if (opts.stats_out) {
            json j;
            j["mode"] = opts.no_binarise ? "direct" : "binarised";
            j["order"] = header_for(q, run_order);
            if (bits)
                j["bits"] = bits;
            j["domain_size"] = q.domain_size;
            j["answers"] = stats.answers_emitted;
            j["recursive_calls"] = stats.recursive_calls;
            j["consistent_calls"] = stats.consistent_calls;
            j["per_depth_calls"] = stats.per_depth_calls;
            j["wall_time_ms"] = elapsed.count();
            write_json(*opts.stats_out, j);
        }
        return exit_code::ok;
    });
}

int cmd_sample(const SampleOptions &opts, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        std::uint64_t seed = 0;
        if (opts.seed) {
            seed = *opts.seed;
        } else if (const char *env = std::getenv("SEED"); env and *env) {
            char *end = nullptr;
            seed = std::strtoull(env, &end, 10);
            if (*end != '\0')
                throw InvalidInput("SEED must be an unsigned integer");
        }
        if (opts.estimator != "agm" and opts.estimator != "pm")
            throw InvalidInput("--estimator must be agm or pm");

        const auto in = load_instance(opts.spec);
        const auto &q = in.q;
        std::optional<std::vector<VarId>> order;
        if (opts.order)
            order = parse_order(q, *opts.order);

        std::optional<BinarisedSampler> sampler;
        CoverSolution cover;
        if (opts.estimator == "pm") {
            if (in.spec.constraints.empty())
                throw InvalidInput("--estimator pm needs degree constraints in the spec");
            const auto cs = full_constraints(in);
            for (const auto &v : validate(q, cs))
                if (not v.pass)
                    throw OrderError("instance violates constraint "
                                     + format_constraint(cs, cs.constraints[v.constraint]) + ": " + v.message);
            const auto run_order = constrained_order(cs, order);
            cover = pm_cover(in, cs);
            sampler = BinarisedSampler::pm(q, cs, run_order, cover.cover);
        } else {
            cover = agm_cover(in);
            sampler = BinarisedSampler::agm(q, order.value_or(q.default_order()), cover.cover);
        }

        Rng rng(seed);
        auto result = sampler->sample(opts.count, rng, opts.max_work);

        const auto columns = q.default_order();
        with_output(opts.output, out, [&](std::ostream &os) {
            write_csv_row(os, header_for(q, columns));
            for (const auto &a : result.answers)
                write_csv_row(os, decode_row(q, columns, a));
        });

        if (opts.stats_out) {
            const auto &s = result.stats;
            json j;
            j["estimator"] = opts.estimator;
            j["seed"] = seed;
            j["weights"] = json::array();
            for (const auto &w : cover.cover.weights)
                j["weights"].push_back(format_rational(w));
            j["up_root"] = s.up_root_initial;
            j["up_root_final"] = s.up_root_final;
            j["trials"] = s.trials;
            j["failures"] = s.failures;
            j["answers"] = s.answers_returned;
            j["mean_trials_per_success"] = s.mean_trials_per_success();
            j["memo_entries"] = sampler->memo().overrides.size();
            write_json(*opts.stats_out, j);
        }

        switch (result.status) {
            case SampleStatus::empty:
                err << "answer set empty\n";
                return exit_code::empty;
            case SampleStatus::budget_exhausted:
                err << "work budget exhausted after " << result.stats.trials << " walks ("
                    << result.answers.size() << " of " << opts.count << " answers)\n";
                return exit_code::budget;
            case SampleStatus::ok:
                break;
        }
        return exit_code::ok;
    });
}

int cmd_cover(const std::filesystem::path &path, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        const auto spec = load_query_spec(path);
        const auto tables = load_tables(spec);
        // A variable outside every relation cannot be covered; report it before encoding rejects it.
        for (const auto &x : query_order(spec, tables)) {
            bool seen = std::any_of(tables.begin(), tables.end(), [&](const RawTable &t) {
                return std::find(t.header.begin(), t.header.end(), x) != t.header.end();
            });
            if (not seen)
                throw InfeasibleCover(x);
        }
        Instance in{spec, encode_instance(tables, query_order(spec, tables))};

        std::vector<std::string> labels;
        CoverSolution sol;
        if (in.spec.constraints.empty()) {
            sol = agm_cover(in);
            for (std::size_t i = 0; i != in.q.relations.size(); ++i) {
                const auto &r = in.q.relations[i];
                labels.push_back(r.name() + " N=" + std::to_string(r.size()));
            }
        } else {
            const auto cs = full_constraints(in);
            sol = pm_cover(in, cs);
            for (const auto &dc : cs.constraints)
                labels.push_back(format_constraint(cs, dc));
        }

        out << "weights:";
        for (const auto &w : sol.cover.weights)
            out << ' ' << format_rational(w);
        out << "\nlog2_bound: " << format_bound(sol.log2_bound()) << '\n';
        for (std::size_t i = 0; i != labels.size(); ++i)
            out << "  " << format_rational(sol.cover.weights[i]) << "  " << labels[i] << '\n';
        return exit_code::ok;
    });
}

int cmd_validate(const std::filesystem::path &path, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        const auto in = load_instance(path);
        const auto &q = in.q;
        const auto cs = build_constraints(in.spec, q);

        if (cs.constraints.empty()) {
            out << "no degree constraints\n";
        } else {
            std::vector<std::array<std::string, 6>> rows;
            rows.push_back({"constraint", "guard", "max_degree", "N", "result", "witness"});
            for (const auto &v : validate(q, cs)) {
                const auto &dc = cs.constraints[v.constraint];
                rows.push_back({format_constraint(cs, dc),
                                v.guard_found ? q.relations[v.guard_relation].name() : "-",
                                v.guard_found ? std::to_string(v.max_degree) : "-",
                                std::to_string(dc.bound),
                                v.pass ? "pass" : "FAIL",
                                v.guard_found ? format_witness(q, v.witness) : v.message});
            }
            std::array<std::size_t, 6> width{};
            for (const auto &r : rows)
                for (std::size_t c = 0; c != r.size(); ++c)
                    width[c] = std::max(width[c], r[c].size());
            for (const auto &r : rows) {
                std::string line;
                for (std::size_t c = 0; c != r.size(); ++c) {
                    line += r[c];
                    if (c + 1 != r.size())
                        line += std::string(width[c] - r[c].size() + 2, ' ');
                }
                out << line << '\n';
            }
        }

        auto compat = compatible_order(cs);
        if (auto *cycle = std::get_if<Cycle>(&compat)) {
            out << "dependency graph: cyclic (" << format_cycle(cs, *cycle) << ")\n";
        } else {
            out << "dependency graph: acyclic\ncompatible order:";
            for (auto v : std::get<std::vector<VarId>>(compat))
                out << ' ' << cs.variables[v];
            out << '\n';
        }
        return exit_code::ok;
    });
}

int cmd_oracle(const std::filesystem::path &path, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        const auto in = load_instance(path);
        const auto order = in.q.default_order();
        write_csv_row(out, header_for(in.q, order));
        for (const auto &a : oracle::nested_loop_join(in.q))
            write_csv_row(out, decode_row(in.q, order, a));
        return exit_code::ok;
    });
}

}
