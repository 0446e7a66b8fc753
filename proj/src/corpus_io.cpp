#include "coprime/corpus_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace coprime {

namespace {

BigNat parse_hex_field(const std::string& text, std::size_t line) {
    try {
        return BigNat::from_hex(text);
    } catch (const ParseError& e) {
        throw ParseError(line, e.what());
    }
}

ordered_json parse_line(const std::string& line, std::size_t lineno) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(lineno, "expected a JSON object");
    return j;
}

const ordered_json& require_field(const ordered_json& j, const char* name, std::size_t lineno) {
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(lineno, std::string("missing field '") + name + "'");
    return *it;
}

std::string require_string(const ordered_json& j, const char* name, std::size_t lineno) {
    const ordered_json& f = require_field(j, name, lineno);
    if (!f.is_string()) throw ParseError(lineno, std::string("field '") + name + "' must be a string");
    return f.get<std::string>();
}

std::uint64_t require_uint(const ordered_json& j, const char* name, std::size_t lineno) {
    const ordered_json& f = require_field(j, name, lineno);
    if (!f.is_number_unsigned()) {
        throw ParseError(lineno, std::string("field '") + name + "' must be a non-negative integer");
    }
    return f.get<std::uint64_t>();
}

}  // namespace

std::string to_hex(const BigNat& v) { return v.to_hex(); }

BigNat from_hex_strict(std::string_view text) { return BigNat::from_hex(text); }

void write_corpus(const Corpus& corpus, std::ostream& out) {
    std::unordered_set<std::string> seen;
    for (const ModulusRecord& record : corpus) {
        if (!seen.insert(record.id).second)
            throw ValidationError("duplicate id \"" + record.id + "\" in corpus");
        ordered_json j;
        j["id"] = record.id;
        j["n"] = record.n.to_hex();
        if (!record.provenance.is_null()) j["provenance"] = record.provenance;
        for (const auto& [key, value] : record.extras.items()) j[key] = value;
        out << j.dump() << '\n';
    }
}

std::string write_corpus_string(const Corpus& corpus) {
    std::ostringstream out;
    write_corpus(corpus, out);
    return out.str();
}

Corpus read_corpus(std::istream& in) {
    Corpus corpus;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) throw ParseError(lineno, "empty line");
        ordered_json j = parse_line(line, lineno);

        ModulusRecord record;
        record.id = require_string(j, "id", lineno);
        if (record.id.empty()) throw ParseError(lineno, "field 'id' must be non-empty");
        record.n = parse_hex_field(require_string(j, "n", lineno), lineno);
        if (record.n < BigNat(4ul)) throw ParseError(lineno, "modulus must be >= 4");
        if (auto it = j.find("provenance"); it != j.end()) {
            if (!it->is_object()) throw ParseError(lineno, "field 'provenance' must be an object");
            record.provenance = *it;
        }
        for (const auto& [key, value] : j.items()) {
            if (key == "id" || key == "n" || key == "provenance") continue;
            record.extras[key] = value;
        }
        if (!seen.insert(record.id).second)
            throw ValidationError("duplicate id \"" + record.id + "\" (line " +
                                  std::to_string(lineno) + ")");
        corpus.push_back(std::move(record));
    }
    return corpus;
}

Corpus read_corpus_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open corpus file " + path.string());
    return read_corpus(in);
}

KeyRecord make_key_record(const PrivateKey& pk, std::optional<SeedProvenance> seed) {
    KeyRecord record;
    record.k = pk.key.k;
    record.policy = pk.key.policy.tag();
    record.p = pk.key.p;
    record.q = pk.key.q;
    record.n = pk.key.n;
    record.e = pk.e;
    record.d = pk.d;
    record.lambda = pk.carmichael_lambda;
    record.outer_attempts = pk.key.outer_attempts;
    record.candidate_tests = pk.key.candidate_tests;
    record.seed = seed;
    return record;
}

void write_key_record(const KeyRecord& record, std::ostream& out) {
    ordered_json j;
    j["k"] = record.k;
    j["policy"] = record.policy;
    j["p"] = record.p.to_hex();
    j["q"] = record.q.to_hex();
    j["n"] = record.n.to_hex();
    j["e"] = record.e.to_hex();
    j["d"] = record.d.to_hex();
    j["lambda"] = record.lambda.to_hex();
    j["outer_attempts"] = record.outer_attempts;
    j["candidate_tests"] = record.candidate_tests;
    if (record.seed) {
        j["seed"] = {{"master_seed", BigNat(record.seed->master_seed).to_hex()},
                     {"stream_index", record.seed->stream_index}};
    }
    out << j.dump() << '\n';
}

std::string write_key_record_string(const KeyRecord& record) {
    std::ostringstream out;
    write_key_record(record, out);
    return out.str();
}

KeyRecord read_key_record(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(0, "no key record to read");
    const std::size_t lineno = 1;
    if (line.empty()) throw ParseError(lineno, "empty line");
    ordered_json j = parse_line(line, lineno);

    KeyRecord record;
    const std::uint64_t k = require_uint(j, "k", lineno);
    if (k == 0 || k > 0xFFFFFFFFull) throw ParseError(lineno, "field 'k' out of range");
    record.k = static_cast<unsigned>(k);
    record.policy = require_string(j, "policy", lineno);
    Policy::from_tag(record.policy);  // reject unknown tags early
    record.p = parse_hex_field(require_string(j, "p", lineno), lineno);
    record.q = parse_hex_field(require_string(j, "q", lineno), lineno);
    record.n = parse_hex_field(require_string(j, "n", lineno), lineno);
    record.e = parse_hex_field(require_string(j, "e", lineno), lineno);
    record.d = parse_hex_field(require_string(j, "d", lineno), lineno);
    record.lambda = parse_hex_field(require_string(j, "lambda", lineno), lineno);
    record.outer_attempts = require_uint(j, "outer_attempts", lineno);
    record.candidate_tests = require_uint(j, "candidate_tests", lineno);
    if (auto it = j.find("seed"); it != j.end()) {
        if (!it->is_object()) throw ParseError(lineno, "field 'seed' must be an object");
        SeedProvenance seed;
        seed.master_seed = parse_hex_field(require_string(*it, "master_seed", lineno), lineno).to_u64();
        seed.stream_index = require_uint(*it, "stream_index", lineno);
        record.seed = seed;
    }
    return record;
}

std::vector<KeyRecord> read_key_records(std::istream& in) {
    std::vector<KeyRecord> records;
    while (in.peek() != std::char_traits<char>::eof()) records.push_back(read_key_record(in));
    return records;
}

}  // namespace coprime
