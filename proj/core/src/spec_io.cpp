#include "invar/problem/spec_io.hpp"

#include <nlohmann/json.hpp>

#include <set>
#include <stdexcept>

namespace invar {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument("problem spec: " + msg); }

void check_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) bad("unknown key '" + key + "' in " + where);
    }
}

Vec vec_from(const json& arr, const std::string& where) {
    if (!arr.is_array() || arr.empty()) bad(where + " must be a nonempty array");
    Vec v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) bad(where + " entries must be numbers");
        v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
    }
    return v;
}

json vec_to(const Vec& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Domain domain_from(const json& d, const std::string& where) {
    if (!d.is_object()) bad(where + " must be an object");
    const std::string type = d.value("type", "");
    if (type == "rect") {
        check_keys(d, where, {"type", "lower", "upper"});
        return Domain::hyper_rectangle(vec_from(d.at("lower"), where + ".lower"),
                                       vec_from(d.at("upper"), where + ".upper"));
    }
    if (type == "disk") {
        check_keys(d, where, {"type", "center", "radius"});
        return Domain::disk(vec_from(d.at("center"), where + ".center"),
                            d.at("radius").get<double>());
    }
    if (type == "annulus") {
        check_keys(d, where, {"type", "r1", "r2"});
        return Domain::annulus(d.at("r1").get<double>(), d.at("r2").get<double>());
    }
    if (type == "weyl") {
        check_keys(d, where, {"type", "dimension", "lower", "upper"});
        const int n = d.at("dimension").get<int>();
        return Domain::weyl_chamber(
            n, Box{vec_from(d.at("lower"), where + ".lower"), vec_from(d.at("upper"), where + ".upper")});
    }
    bad(where + " has unsupported domain type '" + type + "'");
}

json domain_to(const Domain& d) {
    json out;
    if (d.is_rectangle()) {
        out["type"] = "rect";
        out["lower"] = vec_to(d.as_rectangle().lower);
        out["upper"] = vec_to(d.as_rectangle().upper);
    } else if (d.is_disk()) {
        out["type"] = "disk";
        out["center"] = vec_to(d.as_disk().center);
        out["radius"] = d.as_disk().radius;
    } else if (d.is_annulus()) {
        out["type"] = "annulus";
        out["r1"] = d.as_annulus().r1;
        out["r2"] = d.as_annulus().r2;
    } else if (d.is_weyl_chamber()) {
        out["type"] = "weyl";
        out["dimension"] = d.as_weyl_chamber().dimension;
        out["lower"] = vec_to(d.as_weyl_chamber().box.lower);
        out["upper"] = vec_to(d.as_weyl_chamber().box.upper);
    } else {
        throw std::invalid_argument("grid-mask domains have no document form");
    }
    return out;
}

DynamicsField dynamics_from(const json& d) {
    if (!d.is_object()) bad("dynamics must be an object");
    const std::string tag = d.value("tag", "");
    if (tag == "brownian") {
        check_keys(d, "dynamics", {"tag", "dim"});
        return make_brownian(d.at("dim").get<int>());
    }
    if (tag == "single_input_brownian") {
        check_keys(d, "dynamics", {"tag", "g"});
        return make_single_input_brownian(vec_from(d.at("g"), "dynamics.g"));
    }
    if (tag == "linear_drift") {
        check_keys(d, "dynamics", {"tag", "a"});
        return make_linear_drift(d.at("a").get<double>());
    }
    if (tag == "spring_damper") {
        check_keys(d, "dynamics", {"tag", "alpha", "beta"});
        return make_spring_damper(d.at("alpha").get<double>(), d.at("beta").get<double>());
    }
    bad("unknown dynamics tag '" + tag + "'");
}

json dynamics_to(const DynamicsField& dyn) {
    json out;
    out["tag"] = dyn.tag;
    if (dyn.tag == "brownian") {
        out["dim"] = dyn.state_dim;
    } else if (dyn.tag == "single_input_brownian") {
        out["g"] = vec_to(dyn.input_matrix(0.0, Vec::Zero(2)).col(0));
    } else if (dyn.tag == "linear_drift") {
        out["a"] = dyn.drift(0.0, Vec::Zero(2))[0];
    } else if (dyn.tag == "spring_damper") {
        // Recover (alpha, beta) from probe evaluations: f2(x) = -a x1^3 - b x2.
        Vec e1 = Vec::Zero(2), e2 = Vec::Zero(2);
        e1[0] = 1.0;
        e2[1] = 1.0;
        out["alpha"] = -dyn.drift(0.0, e1)[1];
        out["beta"] = -dyn.drift(0.0, e2)[1];
    } else {
        throw std::invalid_argument("custom dynamics have no document form");
    }
    return out;
}

}  // namespace

ProblemSpec problem_spec_from_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) bad("document root must be an object");
    check_keys(doc, "root", {"schema_version", "domain", "target", "dynamics", "horizon", "x0"});

    const Domain domain = domain_from(doc.at("domain"), "domain");
    std::optional<Domain> target;
    if (doc.contains("target") && !doc.at("target").is_null())
        target = domain_from(doc.at("target"), "target");

    const json& h = doc.at("horizon");
    if (!h.is_object()) bad("horizon must be an object");
    Horizon horizon = Horizon::infinite();
    const std::string htype = h.value("type", "");
    if (htype == "finite") {
        check_keys(h, "horizon", {"type", "T"});
        horizon = Horizon::finite(h.at("T").get<double>());
    } else if (htype == "infinite") {
        check_keys(h, "horizon", {"type"});
    } else {
        bad("horizon.type must be 'finite' or 'infinite'");
    }

    return ProblemSpec(dynamics_from(doc.at("dynamics")), domain, target, horizon,
                       vec_from(doc.at("x0"), "x0"));
}

std::string problem_spec_to_json(const ProblemSpec& spec) {
    json doc;
    doc["schema_version"] = 1;
    doc["domain"] = domain_to(spec.domain);
    if (spec.target) doc["target"] = domain_to(*spec.target);
    doc["dynamics"] = dynamics_to(spec.dynamics);
    if (spec.horizon.is_finite()) {
        doc["horizon"] = {{"type", "finite"}, {"T", spec.horizon.T()}};
    } else {
        doc["horizon"] = {{"type", "infinite"}};
    }
    doc["x0"] = vec_to(spec.x0);
    return doc.dump(2) + "\n";
}

}  // namespace invar
