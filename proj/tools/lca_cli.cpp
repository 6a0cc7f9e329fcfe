// Command-line front end: rule analysis, inversion, iteration, simulation,
// and the exact mixing / independence experiments. All numeric output is
// exact; rationals print as num/den.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lca/dynamics.hpp"
#include "lca/measure.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep))
        parts.push_back(part);
    return parts;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const unsigned long long value = std::stoull(text, &used);
        if (used != text.size())
            throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw lca::InvalidInput("cannot parse " + what + " from '" + text + "'");
    }
}

long long parse_i64(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const long long value = std::stoll(text, &used);
        if (used != text.size())
            throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw lca::InvalidInput("cannot parse " + what + " from '" + text + "'");
    }
}

std::vector<lca::Residue> parse_residues(const std::string& text, const std::string& what) {
    std::vector<lca::Residue> out;
    for (const auto& part : split(text, ','))
        out.push_back(parse_u64(part, what));
    return out;
}

// Compact window guard for user-supplied rules; iterates and inverses of
// valid rules may grow beyond it internally.
void check_rule_window(long long l, std::size_t width) {
    const long long r = l + static_cast<long long>(width) - 1;
    if (l < -64 || l > 64 || r < -64 || r > 64)
        throw lca::InvalidInput("rule window [" + std::to_string(l) + ", " +
                                std::to_string(r) + "] outside the [-64, 64] guard");
}

// Inline "m=4;l=1;coeffs=2,2,1" or "@rule.json" with {"m":..,"l":..,"coeffs":[..]}.
lca::LocalRule parse_rule(const std::string& spec) {
    std::uint64_t m = 0;
    long long l = 0;
    std::vector<lca::Residue> coeffs;
    bool have_m = false, have_l = false, have_coeffs = false;

    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in)
            throw lca::InvalidInput("cannot open rule file '" + spec.substr(1) + "'");
        json doc;
        try {
            in >> doc;
            m = doc.at("m").get<std::uint64_t>();
            l = doc.at("l").get<long long>();
            coeffs = doc.at("coeffs").get<std::vector<lca::Residue>>();
        } catch (const json::exception& e) {
            throw lca::InvalidInput("bad rule file: " + std::string(e.what()));
        }
        have_m = have_l = have_coeffs = true;
    } else {
        for (const auto& field : split(spec, ';')) {
            const auto eq = field.find('=');
            if (eq == std::string::npos)
                throw lca::InvalidInput("bad rule field '" + field + "'");
            const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
            if (key == "m") {
                m = parse_u64(value, "m");
                have_m = true;
            } else if (key == "l") {
                l = parse_i64(value, "l");
                have_l = true;
            } else if (key == "coeffs") {
                coeffs = parse_residues(value, "coeffs");
                have_coeffs = true;
            } else {
                throw lca::InvalidInput("unknown rule field '" + key + "'");
            }
        }
    }
    if (!have_m || !have_l || !have_coeffs)
        throw lca::InvalidInput("rule spec needs m, l and coeffs");
    check_rule_window(l, coeffs.size());
    return lca::LocalRule(lca::factorize(m), static_cast<int>(l), std::move(coeffs));
}

// Inline "a=0;word=0,0,0,0" or "@cylinder.json" with {"a":..,"word":[..]}.
lca::Cylinder parse_cylinder(const std::string& spec) {
    lca::Cylinder c;
    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in)
            throw lca::InvalidInput("cannot open cylinder file '" + spec.substr(1) + "'");
        json doc;
        try {
            in >> doc;
            c.start = doc.at("a").get<int>();
            c.symbols = doc.at("word").get<std::vector<lca::Residue>>();
        } catch (const json::exception& e) {
            throw lca::InvalidInput("bad cylinder file: " + std::string(e.what()));
        }
        return c;
    }
    bool have_a = false, have_word = false;
    for (const auto& field : split(spec, ';')) {
        const auto eq = field.find('=');
        if (eq == std::string::npos)
            throw lca::InvalidInput("bad cylinder field '" + field + "'");
        const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
        if (key == "a") {
            c.start = static_cast<int>(parse_i64(value, "a"));
            have_a = true;
        } else if (key == "word") {
            c.symbols = parse_residues(value, "word");
            have_word = true;
        } else {
            throw lca::InvalidInput("unknown cylinder field '" + key + "'");
        }
    }
    if (!have_a || !have_word)
        throw lca::InvalidInput("cylinder spec needs a and word");
    return c;
}

lca::Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos)
        return lca::Rational(parse_u64(text, "rational"), 1);
    return lca::Rational(parse_u64(text.substr(0, slash), "numerator"),
                         parse_u64(text.substr(slash + 1), "denominator"));
}

// "uniform" or a comma list of rationals, one per symbol.
lca::BernoulliVector parse_measure(const std::string& spec, std::uint64_t m) {
    if (spec == "uniform")
        return lca::BernoulliVector::uniform(m);
    std::vector<lca::Rational> probs;
    for (const auto& part : split(spec, ','))
        probs.push_back(parse_rational(part));
    if (probs.size() != m)
        throw lca::InvalidInput("measure has " + std::to_string(probs.size()) +
                                " entries for alphabet " + std::to_string(m));
    return lca::BernoulliVector(std::move(probs));
}

lca::EnumOptions options_from_env() {
    lca::EnumOptions opts;
    if (const char* raw = std::getenv("LCA_ENUM_GUARD"))
        opts.guard = parse_u64(raw, "LCA_ENUM_GUARD");
    return opts;
}

std::string rule_json(const lca::LocalRule& rule) {
    json doc;
    doc["m"] = rule.modulus().m;
    doc["l"] = rule.left();
    doc["coeffs"] = rule.coeffs();
    return doc.dump();
}

std::string modulus_line(const lca::Modulus& modulus) {
    std::ostringstream out;
    out << modulus.m << " = ";
    for (std::size_t i = 0; i < modulus.factors.size(); ++i) {
        if (i > 0)
            out << " * ";
        out << modulus.factors[i].prime;
        if (modulus.factors[i].exponent > 1)
            out << "^" << modulus.factors[i].exponent;
    }
    return out.str();
}

std::string permutativity_name(const lca::PermutativityClass& cls) {
    if (cls.bipermutative())
        return "bipermutative";
    if (cls.left)
        return "left";
    if (cls.right)
        return "right";
    return "none";
}

std::string config_line(const lca::CyclicConfig& x) {
    std::ostringstream out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i > 0)
            out << ',';
        out << x.cell(i);
    }
    return out.str();
}

void cmd_analyze(const std::string& rule_spec) {
    const lca::LocalRule rule = parse_rule(rule_spec);
    std::cout << "rule: " << rule_json(rule) << "\n";
    std::cout << "modulus: " << modulus_line(rule.modulus()) << "\n";
    std::cout << "fps: " << lca::rule_to_fps(rule).to_string() << "\n";
    std::cout << "permutative: " << permutativity_name(lca::permutativity(rule)) << "\n";
    const auto verdict = lca::invertibility(rule);
    std::cout << "invertible: " << (verdict.invertible ? "yes" : "no") << "\n";
    for (const auto& row : verdict.per_prime) {
        std::cout << "  prime " << row.prime << ": ";
        if (row.unit_count == 1)
            std::cout << "unit index " << row.unit_index << "\n";
        else
            std::cout << row.unit_count << " unit coefficients\n";
    }
}

void cmd_invert(const std::string& rule_spec) {
    std::cout << rule_json(lca::inverse_rule(parse_rule(rule_spec))) << "\n";
}

void cmd_iterate(const std::string& rule_spec, unsigned n) {
    const lca::LocalRule rule = parse_rule(rule_spec);
    const lca::LocalRule iterate = lca::iterate_rule(rule, n);
    std::cout << rule_json(iterate) << "\n";
    std::cout << "# formal window [" << static_cast<long long>(n) * rule.left() << ", "
              << static_cast<long long>(n) * rule.right() << "]\n";
}

void cmd_simulate(const std::string& rule_spec, const std::string& config_spec,
                  unsigned steps, bool roundtrip) {
    const lca::LocalRule rule = parse_rule(rule_spec);
    lca::CyclicConfig x(rule.modulus(), parse_residues(config_spec, "config"));
    const lca::CyclicConfig start = x;
    std::cout << config_line(x) << "\n";
    for (unsigned t = 0; t < steps; ++t) {
        x = lca::apply_cyclic(rule, x);
        std::cout << config_line(x) << "\n";
    }
    if (roundtrip) {
        const lca::LocalRule inverse = lca::inverse_rule(rule);
        for (unsigned t = 0; t < steps; ++t)
            x = lca::apply_cyclic(inverse, x);
        std::cout << "roundtrip: " << config_line(x) << "\n";
        if (!(x == start))
            throw std::logic_error("inverse round trip failed");
    }
}

void print_mixing_report(const lca::MixingReport& report) {
    for (const auto& row : report.rows) {
        std::cout << "n=" << row.n << " corr=" << row.correlation.str()
                  << " prod=" << row.product.str() << " equal=" << (row.equal ? 1 : 0)
                  << " window=[" << row.expansion_lo << "," << row.expansion_hi << "]\n";
    }
    if (report.stable_from)
        std::cout << "stable_from: " << *report.stable_from << "\n";
    else
        std::cout << "stable_from: none\n";
    if (report.formal_threshold)
        std::cout << "formal_threshold: " << *report.formal_threshold << "\n";
    else
        std::cout << "formal_threshold: none\n";
}

void cmd_mixing(const std::string& rule_spec, const std::string& a_spec,
                const std::string& b_spec, unsigned n_max, const std::string& measure_spec,
                const std::string& csv_path, bool use_inverse) {
    const lca::LocalRule rule = parse_rule(rule_spec);
    const lca::Cylinder a = parse_cylinder(a_spec);
    const lca::Cylinder b = parse_cylinder(b_spec);
    const lca::BernoulliVector mu = parse_measure(measure_spec, rule.modulus().m);
    const lca::EnumOptions opts = options_from_env();

    const lca::StrongMixingCheck check =
        lca::check_strong_mixing_window(rule, a, b, n_max, mu, opts);
    const lca::MixingReport* report = &check.forward;
    if (use_inverse) {
        if (!check.inverse)
            throw lca::InvalidInput("--rule-inverse: rule is not invertible");
        report = &*check.inverse;
    }
    print_mixing_report(*report);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out)
            throw lca::InvalidInput("cannot open csv file '" + csv_path + "'");
        lca::write_mixing_csv(out, *report);
    }
}

void cmd_independence(const std::string& rule_spec, unsigned i, unsigned n, unsigned big_n,
                      const std::string& measure_spec, bool self_test) {
    const lca::LocalRule rule = parse_rule(rule_spec);
    const lca::BernoulliVector mu = parse_measure(measure_spec, rule.modulus().m);
    const lca::EnumOptions opts = options_from_env();

    if (self_test) {
        const lca::Partition xi = lca::coordinate_partition(i, rule.modulus(), opts);
        std::cout << "epsilon=" << lca::epsilon_independence(xi, xi, mu, opts).str()
                  << "\n";
        return;
    }
    const lca::WeakBernoulliResult result =
        lca::weak_bernoulli_check(rule, i, n, big_n, mu, opts);
    std::cout << "epsilon=" << result.epsilon.str() << "\n";
    std::cout << "past_window=[" << result.past_lo << "," << result.past_hi << "]\n";
    std::cout << "future_window=[" << result.future_lo << "," << result.future_hi << "]\n";
    std::cout << "past_formal=[" << result.past_formal_lo << "," << result.past_formal_hi
              << "]\n";
    std::cout << "future_formal=[" << result.future_formal_lo << ","
              << result.future_formal_hi << "]\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact analysis of one-dimensional linear cellular automata over Z_m"};
    app.require_subcommand(1);

    std::string rule_spec, config_spec, a_spec, b_spec;
    std::string measure_spec = "uniform";
    std::string csv_path;
    unsigned n = 1, steps = 1, n_max = 6, indep_i = 0, indep_n = 0, indep_big_n = 1;
    bool roundtrip = false, use_inverse = false, self_test = false;

    auto* analyze = app.add_subcommand("analyze", "factorization, permutativity, invertibility");
    analyze->add_option("--rule", rule_spec, "rule spec (inline or @file.json)")->required();

    auto* invert = app.add_subcommand("invert", "inverse rule as a rule spec");
    invert->add_option("--rule", rule_spec)->required();

    auto* iterate = app.add_subcommand("iterate", "n-th iterate as a rule spec");
    iterate->add_option("--rule", rule_spec)->required();
    iterate->add_option("--n", n, "iterate count (>= 1)")->required();

    auto* simulate = app.add_subcommand("simulate", "trajectory on a cyclic configuration");
    simulate->add_option("--rule", rule_spec)->required();
    simulate->add_option("--config", config_spec, "comma-separated residues")->required();
    simulate->add_option("--steps", steps);
    simulate->add_flag("--inverse-roundtrip", roundtrip,
                       "apply the inverse afterwards and print the recovered config");

    auto* mixing = app.add_subcommand("mixing", "exact mixing correlation table");
    mixing->add_option("--rule", rule_spec)->required();
    mixing->add_option("--A", a_spec, "cylinder spec, e.g. a=0;word=0,0,0,0")->required();
    mixing->add_option("--B", b_spec)->required();
    mixing->add_option("--n-max", n_max);
    mixing->add_option("--measure", measure_spec, "uniform or comma list of rationals");
    mixing->add_option("--csv", csv_path, "also write the table as CSV");
    mixing->add_flag("--rule-inverse", use_inverse, "report the table for the inverse rule");

    auto* independence = app.add_subcommand("independence", "epsilon-independence check");
    independence->add_option("--rule", rule_spec)->required();
    independence->add_option("--i", indep_i, "coordinate partition radius");
    independence->add_option("--n", indep_n, "join depth");
    independence->add_option("--N", indep_big_n, "separation");
    independence->add_option("--measure", measure_spec);
    independence->add_flag("--self", self_test,
                           "just the self-dependence of the coordinate partition");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*analyze)
            cmd_analyze(rule_spec);
        else if (*invert)
            cmd_invert(rule_spec);
        else if (*iterate)
            cmd_iterate(rule_spec, n);
        else if (*simulate)
            cmd_simulate(rule_spec, config_spec, steps, roundtrip);
        else if (*mixing)
            cmd_mixing(rule_spec, a_spec, b_spec, n_max, measure_spec, csv_path, use_inverse);
        else if (*independence)
            cmd_independence(rule_spec, indep_i, indep_n, indep_big_n, measure_spec,
                             self_test);
    } catch (const lca::GuardExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}
