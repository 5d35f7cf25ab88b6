#include "pcong/json_io.hpp"

namespace pcong::congruence {

using nlohmann::json;

json to_json(const RamanujanCongruence& rc) {
    return {{"ell", rc.ell}, {"m", rc.m}, {"A", rc.A}, {"B", rc.B}};
}

RamanujanCongruence ramanujan_from_json(const json& j) {
    RamanujanCongruence rc;
    rc.ell = j.at("ell").get<uint64_t>();
    rc.m = j.at("m").get<uint32_t>();
    rc.A = j.at("A").get<uint64_t>();
    rc.B = j.at("B").get<uint64_t>();
    rc.validate();
    return rc;
}

namespace {

json cond_to_json(SignCond c) {
    switch (c) {
        case SignCond::Minus: return -1;
        case SignCond::Zero: return 0;
        case SignCond::Plus: return 1;
        case SignCond::ZeroOrMinus: return json::array({0, -1});
        case SignCond::ZeroOrPlus: return json::array({0, 1});
    }
    throw FormatError("unreachable condition value");
}

SignCond cond_from_json(const json& j) {
    if (j.is_number_integer()) {
        switch (j.get<int>()) {
            case -1: return SignCond::Minus;
            case 0: return SignCond::Zero;
            case 1: return SignCond::Plus;
        }
        throw FormatError("condition value must be -1, 0 or 1");
    }
    if (j.is_array() && j.size() == 2) {
        int a = j[0].get<int>(), b = j[1].get<int>();
        if (a > b) std::swap(a, b);
        if (a == -1 && b == 0) return SignCond::ZeroOrMinus;
        if (a == 0 && b == 1) return SignCond::ZeroOrPlus;
        throw FormatError("condition set must be [0,-1] or [0,1]");
    }
    throw FormatError("condition value must be an integer or a two-element set");
}

} // namespace

json to_json(const SquareClassCongruence& sq) {
    json conds = json::object();
    for (auto& [p, c] : sq.conditions) conds[std::to_string(p)] = cond_to_json(c);
    return {{"ell", sq.ell},
            {"m", sq.m},
            {"modulus", sq.modulus},
            {"convention", sq.convention == OffsetConvention::Scaled24 ? "thmA" : "direct"},
            {"offset", sq.offset},
            {"conditions", conds}};
}

SquareClassCongruence square_class_from_json(const json& j) {
    SquareClassCongruence sq;
    sq.ell = j.at("ell").get<uint64_t>();
    sq.m = j.at("m").get<uint32_t>();
    sq.modulus = j.at("modulus").get<uint64_t>();
    std::string conv = j.value("convention", "thmA");
    if (conv == "thmA")
        sq.convention = OffsetConvention::Scaled24;
    else if (conv == "direct")
        sq.convention = OffsetConvention::Direct;
    else
        throw FormatError("convention must be \"thmA\" or \"direct\"");
    sq.offset = j.value("offset", (int64_t)1);
    if (j.contains("conditions")) {
        for (auto& [key, val] : j.at("conditions").items())
            sq.conditions[std::stoull(key)] = cond_from_json(val);
    }
    sq.validate();
    return sq;
}

json to_json(const VerificationReport& rep) {
    json viol = json::array();
    for (auto& [idx, res] : rep.violations) viol.push_back(json::array({idx, res}));
    return {{"tested", rep.tested_count},
            {"violations", viol},
            {"range_max", rep.range_max},
            {"notes", rep.notes}};
}

} // namespace pcong::congruence

namespace pcong::scanner {

using nlohmann::json;

json to_json(const ScanHit& hit) {
    json j = congruence::to_json(hit.rc);
    j["support"] = hit.support;
    j["radu_flagged"] = hit.radu_flagged;
    return j;
}

json to_json(const SquareClassHit& hit) {
    json j = congruence::to_json(hit.sq);
    j["support"] = hit.support;
    return j;
}

} // namespace pcong::scanner
