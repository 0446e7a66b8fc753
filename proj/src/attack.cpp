#include "coprime/attack.hpp"

#include <chrono>

#include "coprime/ntheory.hpp"

namespace coprime {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void require_moduli(const Corpus& corpus) {
    for (const ModulusRecord& r : corpus) {
        if (r.n < BigNat(2ul)) throw DomainError("modulus \"" + r.id + "\" must be >= 2");
    }
}

struct Scan {
    explicit Scan(const Corpus& corpus) : corpus(corpus), findings(corpus.size()) {
        for (std::size_t i = 0; i < corpus.size(); ++i) findings[i].id = corpus[i].id;
    }

    void note_duplicate(std::size_t i, std::size_t j) {
        findings[i].duplicate_peers.push_back(corpus[j].id);
    }

    // First split wins; later pairs only add duplicate peers.
    void note_factor(std::size_t i, const BigNat& g) {
        Finding& f = findings[i];
        if (!f.factor_small.is_zero()) return;
        BigNat other = corpus[i].n / g;
        if (g <= other) {
            f.factor_small = g;
            f.factor_large = std::move(other);
        } else {
            f.factor_small = std::move(other);
            f.factor_large = g;
        }
    }

    // Examine the unordered pair (i, j) and record what it reveals.
    void inspect_pair(std::size_t i, std::size_t j) {
        const BigNat& ni = corpus[i].n;
        const BigNat& nj = corpus[j].n;
        const BigNat g = gcd(ni, nj);
        if (g == BigNat(1)) return;
        if (ni == nj) {
            note_duplicate(i, j);
            note_duplicate(j, i);
            return;
        }
        if (g > BigNat(1) && g < ni) note_factor(i, g);
        if (g > BigNat(1) && g < nj) note_factor(j, g);
    }

    AttackReport finish(std::string method, double wall_ms) {
        AttackReport report;
        report.method = std::move(method);
        report.corpus_size = corpus.size();
        report.wall_ms = wall_ms;
        std::uint64_t duplicate_links = 0;
        for (Finding& f : findings) {
            duplicate_links += f.duplicate_peers.size();
            if (!f.factor_small.is_zero()) {
                f.cls = ModulusClass::factored;
                ++report.factored_count;
            } else if (!f.duplicate_peers.empty()) {
                f.cls = ModulusClass::identical_duplicate;
            }
        }
        report.identical_pair_count = duplicate_links / 2;
        report.findings = std::move(findings);
        return report;
    }

    const Corpus& corpus;
    std::vector<Finding> findings;
};

}  // namespace

std::string to_string(ModulusClass cls) {
    switch (cls) {
        case ModulusClass::clean: return "clean";
        case ModulusClass::factored: return "factored";
        case ModulusClass::identical_duplicate: return "identical_duplicate";
    }
    throw DomainError("unknown modulus class");
}

bool reports_equivalent(const AttackReport& a, const AttackReport& b) {
    return a.findings == b.findings && a.corpus_size == b.corpus_size &&
           a.factored_count == b.factored_count && a.identical_pair_count == b.identical_pair_count;
}

AttackReport pairwise_gcd_scan(const Corpus& corpus) {
    require_moduli(corpus);
    const auto start = Clock::now();
    Scan scan(corpus);
    for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
        for (std::size_t j = i + 1; j < corpus.size(); ++j) scan.inspect_pair(i, j);
    }
    return scan.finish("pairwise", ms_since(start));
}

ProductTree build_product_tree(const std::vector<BigNat>& values) {
    if (values.empty()) throw DomainError("product tree needs at least one value");
    ProductTree tree;
    tree.levels.push_back(values);
    while (tree.levels.back().size() > 1) {
        const auto& cur = tree.levels.back();
        std::vector<BigNat> next;
        next.reserve((cur.size() + 1) / 2);
        for (std::size_t i = 0; i < cur.size(); i += 2) {
            next.push_back(i + 1 < cur.size() ? cur[i] * cur[i + 1] : cur[i]);
        }
        tree.levels.push_back(std::move(next));
    }
    return tree;
}

AttackReport batch_gcd(const Corpus& corpus) {
    require_moduli(corpus);
    const auto start = Clock::now();
    Scan scan(corpus);
    if (corpus.size() > 1) {
        std::vector<BigNat> values;
        values.reserve(corpus.size());
        for (const ModulusRecord& r : corpus) values.push_back(r.n);
        const ProductTree tree = build_product_tree(values);

        // Remainder tree: P mod node^2 down every level. P mod root^2 is P.
        const std::size_t depth = tree.levels.size();
        std::vector<std::vector<BigNat>> rems(depth);
        rems[depth - 1].push_back(tree.root());
        for (std::size_t level = depth - 1; level-- > 0;) {
            const auto& nodes = tree.levels[level];
            rems[level].resize(nodes.size());
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                const mpz_class& node = nodes[i].raw();
                mpz_class sq = node * node;
                mpz_class r;
                mpz_mod(r.get_mpz_t(), rems[level + 1][i / 2].raw().get_mpz_t(), sq.get_mpz_t());
                rems[level][i] = BigNat(std::move(r));
            }
        }

        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const BigNat& n = corpus[i].n;
            const BigNat g = gcd(n, rems[0][i].div_exact(n));
            if (g == BigNat(1)) continue;
            if (g < n) {
                scan.note_factor(i, g);
                continue;
            }
            // n shares factors with multiple peers or is duplicated; resolve
            // against every peer in index order, exactly as pairwise would.
            for (std::size_t j = 0; j < corpus.size(); ++j) {
                if (j == i) continue;
                const BigNat& nj = corpus[j].n;
                if (nj == n) {
                    scan.note_duplicate(i, j);
                    continue;
                }
                const BigNat gj = gcd(n, nj);
                if (gj > BigNat(1) && gj < n) scan.note_factor(i, gj);
            }
        }
    }
    return scan.finish("batch", ms_since(start));
}

std::string to_json_string(const AttackReport& report) {
    ordered_json j;
    j["method"] = report.method;
    j["corpus_size"] = report.corpus_size;
    j["factored_count"] = report.factored_count;
    j["identical_pair_count"] = report.identical_pair_count;
    j["findings"] = ordered_json::array();
    for (const Finding& f : report.findings) {
        ordered_json entry;
        entry["id"] = f.id;
        entry["class"] = to_string(f.cls);
        if (f.cls == ModulusClass::factored) {
            entry["p"] = f.factor_small.to_hex();
            entry["q"] = f.factor_large.to_hex();
        }
        if (!f.duplicate_peers.empty()) entry["duplicate_peers"] = f.duplicate_peers;
        j["findings"].push_back(std::move(entry));
    }
    return j.dump(2) + "\n";
}

}  // namespace coprime
