#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gtssm/compiler.hpp"
#include "gtssm/dataset.hpp"
#include "gtssm/group.hpp"
#include "gtssm/s3_reference.hpp"
#include "gtssm/ssm.hpp"
#include "gtssm/verifier.hpp"

namespace {

using nlohmann::json;
using namespace gtssm;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotSolvable = 3;

FinitePrecisionConfig default_precision() {
    FinitePrecisionConfig cfg;
    if (const char* env = std::getenv("GTSSM_PRECISION_DIGITS")) {
        try {
            const int d = std::stoi(env);
            if (d < 4 || d > 15) throw std::out_of_range("range");
            cfg.round_digits = d;
        } catch (const std::exception&) {
            throw std::invalid_argument("GTSSM_PRECISION_DIGITS must be an integer in [4, 15]");
        }
    }
    return cfg;
}

Cplx parse_cplx(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("complex values are written re,im");
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

int cmd_group_info(const std::string& spec, const std::string& format) {
    const FiniteGroup g = construct_group(spec);
    const auto series = derived_series(g);

    json j;
    j["spec"] = g.spec;
    j["order"] = g.order;
    j["abelian"] = is_abelian(g);
    j["solvable"] = series.has_value();
    if (series) {
        j["derived_length"] = series->length();
        j["series"] = json::array();
        for (const SubgroupMask& m : series->chain) j["series"].push_back(mask_elements(m));
    } else {
        j["derived_length"] = nullptr;
        j["perfect_residual"] = mask_elements(solvability_residual(g));
    }
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "group          " << g.spec << "\n"
                  << "order          " << g.order << "\n"
                  << "abelian        " << (is_abelian(g) ? "yes" : "no") << "\n";
        if (series) {
            std::cout << "solvable       yes\nderived length " << series->length() << "\nseries         ";
            for (size_t i = 0; i < series->chain.size(); ++i)
                std::cout << (i ? " > " : "") << "G" << (series->chain.size() - 1 - i) << "(|"
                          << mask_order(series->chain[i]) << "|)";
            std::cout << "\n";
        } else {
            std::cout << "solvable       no (perfect subgroup of order "
                      << mask_order(solvability_residual(g)) << ")\n";
        }
    }
    return series ? kExitPass : kExitNotSolvable;
}

int cmd_synthesize(const std::string& spec, const std::string& out_path) {
    const FiniteGroup g = construct_group(spec);
    const DcdSsm model = compile_group(g, default_precision());
    save_model(model, out_path);
    json j;
    j["group"] = g.spec;
    j["layers"] = model.layer_count();
    json dims = json::array();
    for (const auto& l : model.layers) dims.push_back(l.dim);
    j["dims"] = dims;
    j["decoder_anchors"] = model.decoder_anchors.size();
    j["preverify"] = "pass";
    j["out"] = out_path;
    std::cout << j.dump(2) << "\n";
    return kExitPass;
}

int cmd_verify(const std::string& model_path, int exhaustive_len, long random_count, int len,
               std::uint64_t seed, const std::string& format) {
    const DcdSsm model = load_model(model_path);
    const FiniteGroup g = construct_group(model.group_spec);
    TrackingReport rep;
    if (exhaustive_len > 0) {
        rep = verify_exhaustive(model, g, exhaustive_len);
    } else {
        rep = verify_random(model, g, random_count, len, seed);
    }
    std::cout << (format == "table" ? rep.to_table() : rep.to_json() + "\n");
    return rep.pass ? kExitPass : kExitVerifyFail;
}

int cmd_classify(const std::string& lambda_text, const std::string& b_text, double tol) {
    const AffineMap1D m(parse_cplx(lambda_text), parse_cplx(b_text));
    const DynamicsClass c = classify(m, tol);
    json j;
    j["class"] = dynamics_kind_name(c.kind);
    if (c.center) j["center"] = {c.center->real(), c.center->imag()};
    else j["center"] = nullptr;
    std::cout << j.dump(2) << "\n";
    return kExitPass;
}

int cmd_gen_data(const std::string& spec, long count, int len, std::uint64_t seed,
                 const std::string& out_path) {
    const FiniteGroup g = construct_group(spec);
    const Dataset ds = gen_dataset(g, count, len, seed);
    write_dataset(ds, out_path);
    json j;
    j["group"] = g.spec;
    j["count"] = count;
    j["len"] = len;
    j["seed"] = seed;
    j["out"] = out_path;
    std::cout << j.dump(2) << "\n";
    return kExitPass;
}

int cmd_s3_demo() {
    const FiniteGroup g = s3_group();
    const auto table = reproduce_cayley();
    std::cout << "Cayley table of S3 reproduced by the two-automaton cascade:\n\n      ";
    for (int b = 0; b < 6; ++b) std::cout << g.label(b) << (b + 1 < 6 ? "\t" : "\n");
    for (int a = 0; a < 6; ++a) {
        std::cout << g.label(a) << (g.label(a).size() < 4 ? "\t" : "") << "";
        for (int b = 0; b < 6; ++b) std::cout << "\t" << g.label(table[a][b]);
        std::cout << "\n";
    }
    std::cout << "\nState decoding map (q1, q2 = exp(-2*pi*i*k/3)):\n";
    for (int q = 0; q < 2; ++q)
        for (int k = 0; k < 3; ++k) {
            const CascadeState s{q == 0 ? 1 : -1, k};
            std::cout << "  (" << (s.q1 > 0 ? "+1" : "-1") << ", k=" << k << ")  ->  "
                      << g.label(cascade_decode(s)) << "\n";
        }
    bool match = true;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) match &= table[a][b] == g.mul(a, b);
    std::cout << "\nMatches the group table: " << (match ? "yes" : "NO") << "\n";
    return match ? kExitPass : kExitVerifyFail;
}

int cmd_divergence_demo(const std::string& l1, const std::string& c1, const std::string& l2,
                        const std::string& c2, int repeats) {
    const DivergenceSummary s =
        divergence_demo(parse_cplx(l1), parse_cplx(c1), parse_cplx(l2), parse_cplx(c2), repeats);
    json j;
    j["alpha1"] = s.alpha1;
    j["alpha2"] = s.alpha2;
    j["block_translation"] = {s.block_translation.real(), s.block_translation.imag()};
    j["displacement_after_repeats"] = s.displacement.empty() ? 0.0 : s.displacement.back();
    j["repeats"] = repeats;
    j["projected_inf_step"] = s.projected_inf_step;
    std::cout << j.dump(2) << "\n";
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gtssm: compile finite solvable groups into exact diagonal SSMs,\n"
                 "simulate them at finite precision, and verify against group oracles"};
    app.require_subcommand(1);

    std::string spec, out_path = "model.json", model_path, format = "json";
    std::string lambda_text, b_text, l2_text, c1_text = "0,0", c2_text = "1,0";
    int exhaustive_len = 0, len = 1000, repeats = 100;
    long count = 1000;
    std::uint64_t seed = 0;
    double tol = 1e-9;

    auto* info = app.add_subcommand("group-info", "order, solvability and derived series of a group");
    info->add_option("spec", spec, "group spec, e.g. cyclic:60 or product:cyclic:2,cyclic:4")->required();
    info->add_option("--format", format, "json|table");

    auto* synth = app.add_subcommand("synthesize", "compile a group into a model file");
    synth->add_option("spec", spec)->required();
    synth->add_option("--out", out_path, "output model path");

    auto* verify = app.add_subcommand("verify", "check a model file against the group oracle");
    verify->add_option("--model", model_path)->required();
    verify->add_option("--exhaustive", exhaustive_len, "all sequences up to this length");
    verify->add_option("--random", count, "number of random sequences");
    verify->add_option("--len", len, "random sequence length");
    verify->add_option("--seed", seed, "PRNG seed");
    verify->add_option("--format", format, "json|table");

    auto* cls = app.add_subcommand("classify", "classify a 1-D affine map's dynamics");
    cls->add_option("--lambda", lambda_text, "multiplier re,im")->required();
    cls->add_option("--b", b_text, "offset re,im")->required();
    cls->add_option("--tol", tol, "unit-modulus band");

    auto* gen = app.add_subcommand("gen-data", "emit a state-tracking dataset (JSONL)");
    gen->add_option("--group", spec)->required();
    gen->add_option("--count", count)->required();
    gen->add_option("--len", len)->required();
    gen->add_option("--seed", seed)->required();
    gen->add_option("--out", out_path)->required();

    app.add_subcommand("s3-demo", "print the cascade-reproduced S3 table and state map");

    auto* div = app.add_subcommand("divergence-demo", "repeat a two-rotation block and report drift");
    div->add_option("--lambda1", lambda_text)->required();
    div->add_option("--c1", c1_text)->required();
    div->add_option("--lambda2", l2_text)->required();
    div->add_option("--c2", c2_text)->required();
    div->add_option("--repeats", repeats);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (info->parsed()) return cmd_group_info(spec, format);
        if (synth->parsed()) return cmd_synthesize(spec, out_path);
        if (verify->parsed()) {
            if (exhaustive_len <= 0 && verify->count("--random") == 0 && verify->count("--exhaustive") == 0)
                count = 1000;  // default: 1000 random sequences
            return cmd_verify(model_path, exhaustive_len, count, len, seed, format);
        }
        if (cls->parsed()) return cmd_classify(lambda_text, b_text, tol);
        if (gen->parsed()) return cmd_gen_data(spec, count, len, seed, out_path);
        if (app.get_subcommand("s3-demo")->parsed()) return cmd_s3_demo();
        if (div->parsed()) return cmd_divergence_demo(lambda_text, c1_text, l2_text, c2_text, repeats);
    } catch (const NotSolvableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotSolvable;
    } catch (const BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
