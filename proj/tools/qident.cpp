// qident: verify registered q-series identities, list the registry, and dump
// series expansions as text or canonical JSON.

#include "qbailey/identities.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

using namespace qb;
using ordered_json = nlohmann::ordered_json;

namespace {

Exponent default_order(std::size_t n) {
    if (n <= 1) return Exponent::from_int(30);
    if (n == 2) return Exponent::from_int(12);
    return Exponent::from_int(8);
}

Exponent parse_exponent(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Exponent::from_int(std::stoll(s));
    if (s.substr(slash + 1) != "2")
        throw std::invalid_argument("exponent denominator must be 2: " + s);
    return Exponent::from_half(std::stoll(s.substr(0, slash)));
}

// "q", "q^3", "q^-1", "q^7/2", "2*q^2", "-1/2*q"
QFactorBase parse_base(const std::string& s) {
    Rational scale(1);
    std::string rest = s;
    auto star = s.find('*');
    if (star != std::string::npos) {
        scale = Rational(s.substr(0, star));
        scale.canonicalize();
        rest = s.substr(star + 1);
    }
    if (rest.empty() || rest[0] != 'q') throw std::invalid_argument("bad base: " + s);
    Exponent e = Exponent::from_int(1);
    if (rest.size() > 1) {
        if (rest[1] != '^') throw std::invalid_argument("bad base: " + s);
        e = parse_exponent(rest.substr(2));
    }
    return {scale, e};
}

ordered_json series_json(const std::string& expr, const QSeries& s) {
    ordered_json j;
    j["expr"] = expr;
    j["order"] = s.truncation_order().str_halves();
    ordered_json terms = ordered_json::array();
    for (const auto& [e, c] : s.poly().coeffs()) {
        ordered_json t;
        t["exp"] = e.str_halves();
        t["coeff"] = rat_str(c);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

void print_series(const std::string& expr, const QSeries& s, const std::string& format) {
    if (format == "json") {
        std::cout << series_json(expr, s).dump() << "\n";
        return;
    }
    std::cout << expr << " = " << s.str() << "\n";
}

// line-oriented key=value defaults; command-line flags win
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

struct Options {
    std::size_t n = 1;
    std::int64_t N = 2, delta = 0, k = 2, i = 1;
    std::int64_t order = -1; // -1: pick by rank
    std::int64_t jobs = 1, shell_cap = 64;
    std::uint64_t seed = 1;
    std::string format = "text", base = "q", identity, side = "lhs", filter, config, z;

    IdentityParams params() const {
        IdentityParams p;
        p.n = n;
        p.N = N;
        p.delta = delta;
        p.k = k;
        p.i = i;
        p.shell_cap = shell_cap;
        p.seed = seed;
        if (!z.empty()) {
            QFactorBase zb = parse_base(z);
            p.z_scale = zb.scale;
            p.z_exp = zb.exp;
        }
        return p;
    }
    Exponent order_exp() const {
        return order >= 0 ? Exponent::from_int(order) : default_order(n);
    }
};

void add_common_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--n", o.n, "rank of the multiple series");
    cmd->add_option("--N", o.N, "iteration count (modulus 2N+1)");
    cmd->add_option("--delta", o.delta, "delta in {0, 1}");
    cmd->add_option("--k", o.k, "Andrews-Gordon k");
    cmd->add_option("--i", o.i, "Andrews-Gordon i");
    cmd->add_option("--order", o.order, "truncation order (default 30/12/8 by rank)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--jobs", o.jobs, "parallel verification workers")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--shell-cap", o.shell_cap, "lattice shell / chain weight cap");
    cmd->add_option("--seed", o.seed, "sampling seed");
    cmd->add_option("--z", o.z, "argument for the triple product, e.g. -1*q^2");
    cmd->add_option("--config", o.config, "key=value defaults file");
}

void apply_config(CLI::App* cmd, Options& o) {
    if (o.config.empty()) return;
    auto kv = read_config(o.config);
    auto set_if_unset = [&](const char* flag, const char* key, auto& field) {
        auto it = kv.find(key);
        if (it == kv.end() || cmd->count(flag) > 0) return;
        using T = std::decay_t<decltype(field)>;
        if constexpr (std::is_same_v<T, std::string>)
            field = it->second;
        else if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t>)
            field = (T)std::stoull(it->second);
        else
            field = (T)std::stoll(it->second);
    };
    set_if_unset("--n", "n", o.n);
    set_if_unset("--N", "N", o.N);
    set_if_unset("--delta", "delta", o.delta);
    set_if_unset("--k", "k", o.k);
    set_if_unset("--i", "i", o.i);
    set_if_unset("--order", "order", o.order);
    set_if_unset("--format", "format", o.format);
    set_if_unset("--jobs", "jobs", o.jobs);
    set_if_unset("--shell-cap", "shell_cap", o.shell_cap);
    set_if_unset("--seed", "seed", o.seed);
    set_if_unset("--z", "z", o.z);
    if (o.format != "text" && o.format != "json")
        throw std::runtime_error("config format must be text or json");
}

int run_verify(const std::vector<std::string>& names_in, const Options& o) {
    std::vector<std::string> names = names_in;
    if (names.empty() || (names.size() == 1 && names[0] == "all")) {
        names.clear();
        for (const auto& info : registry()) names.push_back(info.name);
    }
    for (const auto& name : names) {
        bool known = false;
        for (const auto& info : registry()) known = known || info.name == name;
        if (!known) {
            std::cerr << "qident: unknown identity: " << name << "\n";
            return 2;
        }
    }

    IdentityParams p = o.params();
    Exponent T = o.order_exp();
    std::vector<IdentityReport> reports(names.size());
    std::size_t workers = std::min<std::size_t>((std::size_t)o.jobs, names.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < names.size(); ++i)
            reports[i] = verify_identity(names[i], p, T);
    } else {
        std::mutex next_mutex;
        std::size_t next = 0;
        auto work = [&] {
            for (;;) {
                std::size_t i;
                {
                    std::lock_guard<std::mutex> lock(next_mutex);
                    if (next >= names.size()) return;
                    i = next++;
                }
                reports[i] = verify_identity(names[i], p, T);
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    int rc = 0;
    for (const auto& r : reports) {
        std::cout << (o.format == "json" ? report_json(r) : report_text(r)) << "\n";
        if (r.status == VerifyStatus::error)
            rc = 2;
        else if (r.status == VerifyStatus::mismatch && rc == 0)
            rc = 1;
    }
    return rc;
}

int run_list(const Options& o) {
    std::vector<const IdentityInfo*> rows;
    for (const auto& info : registry())
        if (o.filter.empty() || info.name.find(o.filter) != std::string::npos)
            rows.push_back(&info);
    if (o.format == "json") {
        ordered_json j;
        j["default_order"] = {{"n=1", 30}, {"n=2", 12}, {"n=3", 8}};
        ordered_json arr = ordered_json::array();
        for (const auto* info : rows) {
            ordered_json row;
            row["name"] = info->name;
            row["summary"] = info->summary;
            row["params"] = info->schema;
            arr.push_back(std::move(row));
        }
        j["identities"] = std::move(arr);
        std::cout << j.dump() << "\n";
        return 0;
    }
    std::cout << "default order: n=1 -> 30, n=2 -> 12, n=3 -> 8\n";
    for (const auto* info : rows) {
        std::cout << info->name;
        if (!info->schema.empty()) std::cout << " [" << info->schema << "]";
        std::cout << "\n    " << info->summary << "\n";
    }
    return 0;
}

int run_dump(const std::string& expr, const Options& o) {
    Exponent T = o.order_exp();
    if (expr == "poch_inf") {
        print_series(expr, poch_inf(parse_base(o.base), Exponent::from_int(1), T), o.format);
        return 0;
    }
    if (expr == "ag_product") {
        print_series(expr, ag_product_series(o.k, o.i, T), o.format);
        return 0;
    }
    if (expr == "gordon_gf") {
        print_series(expr, gordon_gf(o.k, o.i, T), o.format);
        return 0;
    }
    if (expr == "side") {
        if (o.identity.empty()) {
            std::cerr << "qident: dump side requires --identity\n";
            return 2;
        }
        QSeries s = identity_side(o.identity, o.side == "lhs", o.params(), T);
        print_series(o.identity + ":" + o.side, s, o.format);
        return 0;
    }
    std::cerr << "qident: unknown expression: " << expr << "\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of multiple basic hypergeometric identities"};
    app.require_subcommand(1);

    Options o;
    std::vector<std::string> names;
    std::string expr;

    CLI::App* verify = app.add_subcommand("verify", "verify identities to a truncation order");
    verify->add_option("names", names, "identity names, or 'all'");
    add_common_flags(verify, o);

    CLI::App* list = app.add_subcommand("list", "list the identity registry");
    list->add_option("--filter", o.filter, "keep names containing this substring");
    add_common_flags(list, o);

    CLI::App* dump = app.add_subcommand("dump", "print a series expansion");
    dump->add_option("expr", expr, "poch_inf | ag_product | gordon_gf | side")->required();
    dump->add_option("--base", o.base, "Pochhammer base, e.g. q, q^2, -1/2*q^3");
    dump->add_option("--identity", o.identity, "registry name for expr=side");
    dump->add_option("--side", o.side, "lhs or rhs")->check(CLI::IsMember({"lhs", "rhs"}));
    add_common_flags(dump, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        apply_config(sub, o);
        if (sub == verify) return run_verify(names, o);
        if (sub == list) return run_list(o);
        return run_dump(expr, o);
    } catch (const std::exception& e) {
        std::cerr << "qident: " << e.what() << "\n";
        return 2;
    }
}
