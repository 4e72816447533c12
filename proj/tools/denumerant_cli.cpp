#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <denum/denum.hpp>
#include <denum/jsonio.hpp>

using namespace denum;
using nlohmann::json;

namespace {

IntVec parse_sequence(const std::string& s) {
    IntVec a;
    size_t pos = 0;
    while (true) {
        size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        size_t b = tok.find_first_not_of(" \t");
        size_t e = tok.find_last_not_of(" \t");
        tok = (b == std::string::npos) ? "" : tok.substr(b, e - b + 1);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("malformed sequence entry '" + tok + "' (expected comma-separated positive integers)");
        a.emplace_back(tok.c_str());
        if (a.back() < 1) throw InputError("sequence entries must be positive");
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return a;
}

Int parse_t(const std::string& s) {
    std::string tok = s;
    if (!tok.empty() && tok[0] == '-') throw InputError("t must be nonnegative");
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("malformed t '" + s + "'");
    return Int(tok.c_str());
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw InputError("cannot open output file '" + out_path + "'");
    f << text;
}

/// Divide out d = gcd(a) when the reduce flag allows it; E(a; t) vanishes off
/// the lattice dZ and E(a; d t) = E(a/d; t).
Int reduce_sequence(IntVec& a, bool reduce) {
    Int d = vec_gcd(a);
    if (d == 1) return d;
    if (!reduce)
        throw InputError("gcd(a) = " + to_string(d) + " > 1; rerun with --reduce to compute E(a/gcd; t)");
    for (Int& x : a) x /= d;
    return d;
}

std::set<int> select_mset(int n, bool all, long topk) {
    if (all == (topk >= 0))
        throw InputError("select exactly one of --all and --top K");
    std::set<int> ms;
    if (all) {
        for (int m = 0; m <= n; ++m) ms.insert(m);
    } else {
        if (topk > n) throw InputError("--top " + std::to_string(topk) + " exceeds the degree bound N = " + std::to_string(n));
        for (int m = n - static_cast<int>(topk); m <= n; ++m) ms.insert(m);
    }
    return ms;
}

int run_compute(const std::string& a_str, bool all, long topk, const std::string& format,
                const std::string& out_path, bool reduce, uint64_t seed) {
    IntVec a = parse_sequence(a_str);
    IntVec original = a;
    Int d = reduce_sequence(a, reduce);
    int n = static_cast<int>(a.size()) - 1;
    QuasiPolynomial q = ct_knapsack(a, select_mset(n, all, topk), nullptr, seed);
    if (format == "json") {
        json j = quasi_to_json(q);
        if (d != 1) {
            json orig = json::array();
            for (const Int& x : original) orig.push_back(to_string(x));
            j["reduced_from"] = orig;
            j["gcd"] = to_string(d);
        }
        emit(j.dump(2) + "\n", out_path);
    } else {
        std::string text;
        if (d != 1)
            text += "gcd(a) = " + to_string(d) + ": E(a; t) = 0 unless " + to_string(d)
                    + " | t, and E(a; " + to_string(d) + " t) = E(a/" + to_string(d)
                    + "; t) shown below\n";
        text += render_quasi_text(q);
        emit(text, out_path);
    }
    return 0;
}

int run_eval(const std::string& a_str, const std::string& t_str, const std::string& format,
             const std::string& out_path, bool reduce, uint64_t seed) {
    IntVec a = parse_sequence(a_str);
    Int t = parse_t(t_str);
    Int d = reduce_sequence(a, reduce);
    Int value = 0;
    if (t % d == 0) {
        int n = static_cast<int>(a.size()) - 1;
        std::set<int> ms;
        for (int m = 0; m <= n; ++m) ms.insert(m);
        QuasiPolynomial q = ct_knapsack(a, ms, nullptr, seed);
        value = q.eval_count(t / d);
    }
    if (format == "json")
        emit(json{{"t", t_str}, {"count", to_string(value)}}.dump() + "\n", out_path);
    else
        emit(to_string(value) + "\n", out_path);
    return 0;
}

int run_check(const std::string& a_str, long tmax_opt, int samples, uint64_t seed,
              const std::string& out_path, bool reduce) {
    IntVec a = parse_sequence(a_str);
    IntVec original = a;
    Int d = reduce_sequence(a, reduce);
    if (samples < 1) throw InputError("--samples must be positive");
    int n = static_cast<int>(a.size()) - 1;
    std::set<int> ms;
    for (int m = 0; m <= n; ++m) ms.insert(m);
    QuasiPolynomial q = ct_knapsack(a, ms, nullptr, seed);

    Int tmax;
    if (tmax_opt >= 0) {
        tmax = tmax_opt;
    } else {
        tmax = 3 * q.lcm() * d;
        if (tmax > 1000000) tmax = 1000000;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(0, tmax.get_si());
    std::vector<Int> ts(samples);
    for (Int& t : ts) t = Int(dist(rng));
    std::vector<Int> want = oracle_count_many(original, ts);
    int bad = 0;
    std::string text;
    for (int i = 0; i < samples; ++i) {
        Int got = (ts[i] % d == 0) ? q.eval_count(ts[i] / d) : Int(0);
        bool ok = got == want[i];
        bad += !ok;
        text += "t=" + to_string(ts[i]) + ": computed=" + to_string(got)
                + " oracle=" + to_string(want[i]) + (ok ? " PASS" : " FAIL") + "\n";
    }
    text += bad ? "check: " + std::to_string(bad) + "/" + std::to_string(samples) + " samples FAILED\n"
                : "check: " + std::to_string(samples) + "/" + std::to_string(samples) + " samples passed\n";
    emit(text, out_path);
    return bad ? 1 : 0;
}

int run_decompose(const std::string& a_str, const std::string& out_path) {
    IntVec fa = parse_sequence(a_str);
    if (fa.size() < 2)
        throw InputError("decompose needs --a f,a_1,...,a_d (at least two entries)");
    Int f = fa[0];
    IntVec alist(fa.begin() + 1, fa.end());
    DenumerantEmbedding emb = denumerant_embed(f, alist);
    std::vector<SignedCone> pieces = barvinok_decompose(emb.Hp);
    std::vector<SignedUniCone> lifted = lift_decomposition(emb, pieces);
    emit(decomposition_to_json(lifted).dump(2) + "\n", out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Sylvester denumerant quasi-polynomial coefficients"};
    app.require_subcommand(1);

    std::string a_str, t_str, format = "text", out_path;
    bool all = false, reduce = false;
    long topk = -1, tmax = -1;
    int samples = 50;
    uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub, bool with_format) {
        sub->add_option("--a", a_str, "comma-separated positive integers")->required();
        sub->add_option("--out", out_path, "write output to PATH instead of stdout");
        sub->add_flag("--reduce", reduce, "divide out gcd(a) when it exceeds 1");
        sub->add_option("--seed", seed, "seed for sampling and slack-vector fallback");
        if (with_format)
            sub->add_option("--format", format, "text or json")
                ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* compute = app.add_subcommand("compute", "closed-form coefficients E_m");
    add_common(compute, true);
    compute->add_flag("--all", all, "all coefficients E_0..E_N");
    compute->add_option("--top", topk, "top K: coefficients E_{N-K}..E_N");

    CLI::App* eval = app.add_subcommand("eval", "exact count E(a;t)");
    add_common(eval, true);
    eval->add_option("--t", t_str, "target value t >= 0")->required();

    CLI::App* check = app.add_subcommand("check", "cross-check against the counting oracle");
    add_common(check, false);
    check->add_option("--tmax", tmax, "sample t uniformly from [0, tmax]");
    check->add_option("--samples", samples, "number of sampled t");

    CLI::App* decompose = app.add_subcommand("decompose", "unimodular decomposition of a denumerant cone; --a f,a_1,...,a_d");
    decompose->add_option("--a", a_str, "f,a_1,...,a_d")->required();
    decompose->add_option("--out", out_path, "write output to PATH instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) return run_compute(a_str, all, topk, format, out_path, reduce, seed);
        if (eval->parsed()) return run_eval(a_str, t_str, format, out_path, reduce, seed);
        if (check->parsed()) return run_check(a_str, tmax, samples, seed, out_path, reduce);
        if (decompose->parsed()) return run_decompose(a_str, out_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
