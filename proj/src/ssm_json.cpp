#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gtssm/ssm.hpp"

namespace gtssm {

namespace {

using nlohmann::json;

json cplx_json(Cplx z) { return json::array({z.real(), z.imag()}); }

Cplx cplx_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw FormatVersionMismatchError("bad complex value");
    return {j[0].get<double>(), j[1].get<double>()};
}

json cvec_json(const CVec& v) {
    json out = json::array();
    for (Cplx z : v) out.push_back(cplx_json(z));
    return out;
}

CVec cvec_from(const json& j) {
    CVec out;
    for (const auto& e : j) out.push_back(cplx_from(e));
    return out;
}

}  // namespace

std::string model_to_json(const DcdSsm& model) {
    json j;
    j["format"] = kModelFormatVersion;
    j["group_spec"] = model.group_spec;
    j["precision"] = {{"round_digits", model.precision.round_digits},
                      {"renormalize_unit", model.precision.renormalize_unit},
                      {"decode_tolerance", model.precision.decode_tolerance},
                      {"inf_threshold", model.precision.inf_threshold}};
    j["layers"] = json::array();
    for (const LayerTable& l : model.layers) {
        json jl;
        jl["dim"] = l.dim;
        jl["context_arity"] = l.context_arity;
        jl["context_anchors"] = json::array();
        for (const CVec& a : l.context_anchors) jl["context_anchors"].push_back(cvec_json(a));
        json lam = json::object(), b = json::object();
        for (int a = 0; a < l.anchor_count(); ++a)
            for (int t = 0; t < l.token_count(); ++t) {
                const std::string key = std::to_string(a) + ":" + std::to_string(t);
                lam[key] = cvec_json(l.lambda[a][t]);
                b[key] = cvec_json(l.b[a][t]);
            }
        jl["lambda"] = std::move(lam);
        jl["b"] = std::move(b);
        j["layers"].push_back(std::move(jl));
    }
    j["h0"] = json::array();
    for (const CVec& v : model.h0) j["h0"].push_back(cvec_json(v));
    j["decoder"] = {{"anchors", json::array()}, {"elements", model.decoder_elements}};
    for (const CVec& a : model.decoder_anchors) j["decoder"]["anchors"].push_back(cvec_json(a));
    return j.dump(2);
}

DcdSsm model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatVersionMismatchError(std::string("model JSON parse error: ") + e.what());
    }
    if (!j.contains("format") || j["format"] != kModelFormatVersion)
        throw FormatVersionMismatchError("unsupported model format version");

    DcdSsm m;
    try {
        m.group_spec = j.at("group_spec").get<std::string>();
        const json& p = j.at("precision");
        m.precision.round_digits = p.at("round_digits").get<int>();
        m.precision.renormalize_unit = p.at("renormalize_unit").get<bool>();
        m.precision.decode_tolerance = p.at("decode_tolerance").get<double>();
        m.precision.inf_threshold = p.at("inf_threshold").get<double>();

        int token_count = -1;
        for (const json& jl : j.at("layers")) {
            LayerTable l;
            l.dim = jl.at("dim").get<int>();
            l.context_arity = jl.at("context_arity").get<int>();
            for (const auto& a : jl.at("context_anchors")) l.context_anchors.push_back(cvec_from(a));
            const json& lam = jl.at("lambda");
            const json& b = jl.at("b");
            if (token_count < 0 && !l.context_anchors.empty())
                token_count = static_cast<int>(lam.size()) / static_cast<int>(l.context_anchors.size());
            l.lambda.assign(l.context_anchors.size(), std::vector<CVec>(token_count));
            l.b.assign(l.context_anchors.size(), std::vector<CVec>(token_count));
            for (int a = 0; a < l.anchor_count(); ++a)
                for (int t = 0; t < token_count; ++t) {
                    const std::string key = std::to_string(a) + ":" + std::to_string(t);
                    l.lambda[a][t] = cvec_from(lam.at(key));
                    l.b[a][t] = cvec_from(b.at(key));
                }
            m.layers.push_back(std::move(l));
        }
        for (const auto& v : j.at("h0")) m.h0.push_back(cvec_from(v));
        for (const auto& a : j.at("decoder").at("anchors")) m.decoder_anchors.push_back(cvec_from(a));
        m.decoder_elements = j.at("decoder").at("elements").get<std::vector<elem_t>>();
    } catch (const json::exception& e) {
        throw FormatVersionMismatchError(std::string("model JSON structure error: ") + e.what());
    }
    m.validate();
    return m;
}

void save_model(const DcdSsm& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GtssmError("cannot open for writing: " + path);
    out << model_to_json(model) << "\n";
}

DcdSsm load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GtssmError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

}  // namespace gtssm
