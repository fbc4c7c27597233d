#include "kneser/family_io.hpp"

namespace kneser {

nlohmann::ordered_json family_to_json(const Family &family)
{
    nlohmann::ordered_json out;
    out["n"] = family.n();
    out["k"] = family.k();
    out["sets"] = family.as_lists();
    if (family.instance().regime() == Regime::Auxiliary)
        out["regime"] = to_string(Regime::Auxiliary);
    return out;
}

std::string family_to_line(const Family &family)
{
    return family_to_json(family).dump();
}

Family family_from_json(const nlohmann::json &record)
{
    if (!record.is_object())
        throw invalid_input("family record must be a JSON object");
    for (const char *key : {"n", "k", "sets"})
        if (!record.contains(key))
            throw invalid_input(std::string("family record lacks field \"") + key + "\"");
    if (!record["n"].is_number_integer() || !record["k"].is_number_integer())
        throw invalid_input("fields n and k must be integers");
    if (!record["sets"].is_array())
        throw invalid_input("field sets must be a list of lists");

    Regime regime = Regime::Determining;
    if (record.contains("regime")) {
        const auto &tag = record["regime"];
        if (tag == "auxiliary")
            regime = Regime::Auxiliary;
        else if (tag != "determining")
            throw invalid_input("unknown regime tag");
    }

    const Instance instance(record["n"].get<int>(), record["k"].get<int>(), regime);
    std::vector<std::vector<Element>> sets;
    for (const auto &s : record["sets"]) {
        if (!s.is_array())
            throw invalid_input("field sets must be a list of lists");
        std::vector<Element> elements;
        for (const auto &e : s) {
            if (!e.is_number_integer())
                throw invalid_input("set elements must be integers");
            elements.push_back(e.get<Element>());
        }
        sets.push_back(std::move(elements));
    }
    return Family(instance, sets);
}

Family parse_family_line(std::string_view line)
{
    nlohmann::json record;
    try {
        record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
        throw invalid_input(std::string("malformed family record: ") + e.what());
    }
    return family_from_json(record);
}

} // namespace kneser
