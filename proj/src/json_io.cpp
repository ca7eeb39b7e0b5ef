#include "spectra/json_io.hpp"

#include "spectra/perm.hpp"

#include <stdexcept>

namespace spectra {

Json partition_to_json(const Partition& p) {
    Json j = Json::array();
    for (int part : p.parts()) j.push_back(part);
    return j;
}

Partition partition_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("partition: expected an array");
    std::vector<int> parts;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw std::invalid_argument("partition: non-integer part");
        parts.push_back(e.get<int>());
    }
    return Partition(parts);   // validates ordering and positivity
}

Json family_to_json(const PermFamily& A) {
    Json j = Json::array();
    for (const auto& p : A.member_perms()) j.push_back(p.one_line());
    return j;
}

PermFamily family_from_json(const Json& j, int n) {
    if (!j.is_array()) throw std::invalid_argument("family: expected an array");
    PermFamily A(n);
    for (const auto& e : j) {
        if (!e.is_array()) throw std::invalid_argument("family: member is not an array");
        Permutation p = Permutation::from_one_line(e.get<std::vector<int>>());
        if (p.n() != n) throw std::invalid_argument("family: member has the wrong size");
        uint64_t rank = lex_rank(p);
        if (A.contains(rank)) throw std::invalid_argument("family: duplicate member");
        A.insert(rank);
    }
    return A;
}

Json spectrum_to_json(const SpectrumTable& t) {
    Json j;
    j["n"] = t.n;
    j["degree"] = int_to_string(t.degree);
    Json entries = Json::array();
    for (const auto& e : t.entries) {
        Json row;
        row["alpha"] = partition_to_json(e.alpha);
        row["lambda"] = int_to_string(e.lambda);
        row["multiplicity"] = int_to_string(e.multiplicity);
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j;
}

Json search_result_to_json(const SearchResult& r) {
    Json j;
    j["status"] = r.status == SearchStatus::complete ? "complete" : "incomplete";
    j["optimum"] = int_to_string(r.optimum);
    j["optima_count"] = r.optima_count;
    j["capped"] = r.capped;
    j["nodes_explored"] = r.nodes_explored;
    Json prunes;
    for (const auto& [name, count] : r.prune_counts) prunes[name] = count;
    j["prune_counts"] = std::move(prunes);
    Json ws = Json::array();
    for (const auto& w : r.witnesses) ws.push_back(family_to_json(w));
    j["witnesses"] = std::move(ws);
    Json pairs = Json::array();
    for (const auto& [a, b] : r.witness_pairs) {
        Json pj;
        pj["a"] = family_to_json(a);
        pj["b"] = family_to_json(b);
        pairs.push_back(std::move(pj));
    }
    j["witness_pairs"] = std::move(pairs);
    return j;
}

namespace {

Json cache_entry_to_json(int n) {
    auto t = CharacterTable::get(n);
    Json entry;
    entry["n"] = n;
    Json rows = Json::array();
    for (const auto& row : t->to_rows()) {
        Json rj;
        rj["alpha"] = partition_to_json(row.alpha);
        Json values;
        for (const auto& [beta, value] : row.values) values[beta] = value;
        rj["values"] = std::move(values);
        rows.push_back(std::move(rj));
    }
    entry["rows"] = std::move(rows);
    return entry;
}

std::shared_ptr<const CharacterTable> cache_entry_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
        throw std::invalid_argument("character cache: entry must carry n and rows");
    int n = j.at("n").get<int>();
    std::vector<CharacterTable::Row> rows;
    for (const auto& rj : j.at("rows")) {
        CharacterTable::Row row;
        row.alpha = partition_from_json(rj.at("alpha"));
        for (const auto& [beta, value] : rj.at("values").items())
            row.values[beta] = value.get<std::string>();
        rows.push_back(std::move(row));
    }
    auto t = CharacterTable::from_rows(n, rows);
    if (!t->column_orthogonality_ok())
        throw std::runtime_error("character-cache-validation: column orthogonality fails for n = " +
                                 std::to_string(n));
    return t;
}

}  // namespace

Json character_cache_to_json(const std::vector<int>& ns) {
    Json j = Json::array();
    for (int n : ns) j.push_back(cache_entry_to_json(n));
    return j;
}

std::vector<std::shared_ptr<const CharacterTable>> character_cache_from_json(const Json& j) {
    std::vector<std::shared_ptr<const CharacterTable>> out;
    if (j.is_object()) {
        out.push_back(cache_entry_from_json(j));
        return out;
    }
    if (!j.is_array()) throw std::invalid_argument("character cache: expected an array or an object");
    for (const auto& entry : j) out.push_back(cache_entry_from_json(entry));
    return out;
}

} // namespace spectra
