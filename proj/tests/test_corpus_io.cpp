#include "doctest.h"

#include <sstream>

#include "coprime/corpus_io.hpp"
#include "support.hpp"

using namespace coprime;
using namespace coprime::testing;

TEST_CASE("corpus line format") {
    Corpus corpus;
    corpus.push_back({"dev-001", BigNat(4183), nullptr, ordered_json::object()});
    CHECK(write_corpus_string(corpus) == "{\"id\":\"dev-001\",\"n\":\"1057\"}\n");
    CHECK(write_corpus_string({}).empty());
}

TEST_CASE("duplicate ids are rejected on write") {
    Corpus corpus;
    corpus.push_back({"a", BigNat(15), nullptr, ordered_json::object()});
    corpus.push_back({"a", BigNat(21), nullptr, ordered_json::object()});
    std::ostringstream out;
    try {
        write_corpus(corpus, out);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("\"a\"") != std::string::npos);
    }
}

TEST_CASE("corpus round trip preserves provenance and unknown fields") {
    Corpus corpus;
    ModulusRecord r1;
    r1.id = "dev-001";
    r1.n = BigNat(4183);
    r1.provenance = {{"policy", "fixed"}, {"device", 1}};
    ModulusRecord r2;
    r2.id = "dev-002";
    r2.n = BigNat(1037);
    r2.extras["zzz"] = 1;
    r2.extras["aaa"] = "keep me";
    corpus.push_back(r1);
    corpus.push_back(r2);

    const std::string text = write_corpus_string(corpus);
    std::istringstream in(text);
    const Corpus parsed = read_corpus(in);
    CHECK(parsed == corpus);
    CHECK(write_corpus_string(parsed) == text);  // canonical bytes
}

TEST_CASE("read_corpus rejects malformed input with line numbers") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_corpus(in);
    };
    CHECK(parse("").empty());

    try {
        parse("{\"id\":\"a\",\"n\":\"f\"}\n{\"id\":\"b\",\"n\":\"0x1057\"}\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("0x") != std::string::npos);
    }

    CHECK_THROWS_AS(parse("not json\n"), ParseError);
    CHECK_THROWS_AS(parse("[1,2]\n"), ParseError);
    CHECK_THROWS_AS(parse("{\"n\":\"f\"}\n"), ParseError);            // missing id
    CHECK_THROWS_AS(parse("{\"id\":\"a\"}\n"), ParseError);           // missing n
    CHECK_THROWS_AS(parse("{\"id\":\"\",\"n\":\"f\"}\n"), ParseError);  // empty id
    CHECK_THROWS_AS(parse("{\"id\":\"a\",\"n\":\"3\"}\n"), ParseError);  // modulus < 4
    CHECK_THROWS_AS(parse("{\"id\":\"a\",\"n\":\"F\"}\n"), ParseError);  // uppercase
    CHECK_THROWS_AS(parse("{\"id\":\"a\",\"n\":\"f\",\"provenance\":3}\n"), ParseError);
    CHECK_THROWS_AS(parse("{\"id\":\"a\",\"n\":\"f\"}\n\n"), ParseError);  // blank line

    try {
        parse("{\"id\":\"dup\",\"n\":\"f\"}\n{\"id\":\"dup\",\"n\":\"15\"}\n");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("\"dup\"") != std::string::npos);
    }
}

TEST_CASE("field order in the file does not affect the parsed corpus") {
    std::istringstream in("{\"n\":\"1057\",\"id\":\"a\",\"x\":7}\n");
    const Corpus parsed = read_corpus(in);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].id == "a");
    CHECK(parsed[0].n == BigNat(4183));
    // re-serialization is canonical: known fields first
    CHECK(write_corpus_string(parsed) == "{\"id\":\"a\",\"n\":\"1057\",\"x\":7}\n");
}

TEST_CASE("random corpora round trip byte-identically") {
    SplitMix64Source src(404);
    Corpus corpus;
    for (int i = 0; i < 300; ++i) {
        ModulusRecord r;
        r.id = "dev-" + std::to_string(i);
        r.n = uniform_below(BigNat::pow2(96), src) + BigNat(4);
        if (i % 3 == 0) r.provenance = {{"policy", "independent"}, {"device", i}};
        if (i % 5 == 0) r.extras["note"] = i;
        corpus.push_back(std::move(r));
    }
    const std::string once = write_corpus_string(corpus);
    std::istringstream in(once);
    const Corpus parsed = read_corpus(in);
    CHECK(parsed == corpus);
    CHECK(write_corpus_string(parsed) == once);
}

TEST_CASE("key record format and worked values") {
    KeyRecord record;
    record.k = 6;
    record.policy = "fixed";
    record.p = BigNat(89);
    record.q = BigNat(47);
    record.n = BigNat(4183);
    record.e = BigNat(65537);
    record.d = BigNat(329);
    record.lambda = BigNat(2024);
    record.outer_attempts = 6;
    record.candidate_tests = 12;
    record.seed = SeedProvenance{1, 0};

    const std::string text = write_key_record_string(record);
    CHECK(text.find("\"n\":\"1057\"") != std::string::npos);
    CHECK(text.find("\"d\":\"149\"") != std::string::npos);
    CHECK(text.find("\"lambda\":\"7e8\"") != std::string::npos);
    CHECK(text.back() == '\n');

    std::istringstream in(text);
    const KeyRecord parsed = read_key_record(in);
    CHECK(parsed == record);
    CHECK(write_key_record_string(parsed) == text);
}

TEST_CASE("key record parse errors name the missing field") {
    std::istringstream in(
        "{\"k\":6,\"policy\":\"fixed\",\"p\":\"59\",\"q\":\"2f\",\"n\":\"1057\",\"e\":\"10001\","
        "\"lambda\":\"7e8\",\"outer_attempts\":6,\"candidate_tests\":12}\n");
    try {
        read_key_record(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("'d'") != std::string::npos);
    }
    std::istringstream empty("");
    CHECK_THROWS_AS(read_key_record(empty), ParseError);
}

TEST_CASE("random key records round trip") {
    SplitMix64Source src(808);
    std::ostringstream out;
    std::vector<KeyRecord> originals;
    for (int i = 0; i < 200; ++i) {
        KeyRecord r;
        r.k = 32;
        r.policy = (i % 2) ? "independent" : "offset:3";
        r.p = uniform_below(BigNat::pow2(33), src) + BigNat(3);
        r.q = uniform_below(BigNat::pow2(32), src) + BigNat(3);
        r.n = r.p * r.q;
        r.e = BigNat(65537);
        r.d = uniform_below(BigNat::pow2(60), src) + BigNat(1);
        r.lambda = uniform_below(BigNat::pow2(60), src) + BigNat(1);
        r.outer_attempts = i + 1;
        r.candidate_tests = 2 * i + 2;
        if (i % 4 == 0) r.seed = SeedProvenance{static_cast<std::uint64_t>(i), 7};
        write_key_record(r, out);
        originals.push_back(std::move(r));
    }
    std::istringstream in(out.str());
    const std::vector<KeyRecord> parsed = read_key_records(in);
    REQUIRE(parsed.size() == originals.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) CHECK(parsed[i] == originals[i]);
}
