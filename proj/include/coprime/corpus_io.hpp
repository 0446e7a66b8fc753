#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coprime/bignat.hpp"
#include "coprime/keygen.hpp"

namespace coprime {

// File conventions, normative and bit-exact:
//  - big integers are minimal lowercase hex, no "0x", no leading zeros;
//  - corpora are JSON lines {"id":"...","n":"<hex>"} with an optional
//    "provenance" object, UTF-8, LF line endings;
//  - serialization is canonical: known fields in fixed order, unknown fields
//    preserved in their original order, no whitespace variation.
// Secret fields (p, q, d, lambda) appear only in key records, never in
// corpus files: the attack pipeline operates on public data only.

using ordered_json = nlohmann::ordered_json;

std::string to_hex(const BigNat& v);
BigNat from_hex_strict(std::string_view text);

struct ModulusRecord {
    std::string id;
    BigNat n;
    ordered_json provenance;  // null when absent, object otherwise
    ordered_json extras = ordered_json::object();  // unknown fields, original order

    friend bool operator==(const ModulusRecord& a, const ModulusRecord& b) {
        return a.id == b.id && a.n == b.n && a.provenance == b.provenance && a.extras == b.extras;
    }
};

using Corpus = std::vector<ModulusRecord>;

void write_corpus(const Corpus& corpus, std::ostream& out);
std::string write_corpus_string(const Corpus& corpus);
Corpus read_corpus(std::istream& in);
Corpus read_corpus_file(const std::filesystem::path& path);

struct SeedProvenance {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    friend bool operator==(const SeedProvenance&, const SeedProvenance&) = default;
};

struct KeyRecord {
    unsigned k = 0;
    std::string policy;
    BigNat p, q, n, e, d, lambda;
    std::uint64_t outer_attempts = 0;
    std::uint64_t candidate_tests = 0;
    std::optional<SeedProvenance> seed;

    friend bool operator==(const KeyRecord&, const KeyRecord&) = default;
};

KeyRecord make_key_record(const PrivateKey& pk, std::optional<SeedProvenance> seed = std::nullopt);

void write_key_record(const KeyRecord& record, std::ostream& out);
std::string write_key_record_string(const KeyRecord& record);
// Reads one record (one line); throws ParseError at end of input.
KeyRecord read_key_record(std::istream& in);
std::vector<KeyRecord> read_key_records(std::istream& in);

}  // namespace coprime
