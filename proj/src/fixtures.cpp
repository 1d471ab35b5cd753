#include "almaff/fixtures.hpp"
#include <nlohmann/json.hpp>
#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace almaff {

// ---- sha256 (FIPS 180-4), enough to guard the fixture files ------------
namespace {

struct Sha256 {
    uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                     0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    uint64_t len = 0;
    unsigned char buf[64];
    size_t fill = 0;

    static uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

    void block(const unsigned char* p) {
        static const uint32_t K[64] = {
            0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b,
            0x59f111f1, 0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01,
            0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7,
            0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc,
            0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152,
            0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
            0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
            0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
            0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819,
            0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116, 0x1e376c08,
            0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f,
            0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
            0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};
        uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = (uint32_t)p[4 * i] << 24 | (uint32_t)p[4 * i + 1] << 16 |
                   (uint32_t)p[4 * i + 2] << 8 | p[4 * i + 3];
        for (int i = 16; i < 64; ++i) {
            uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5],
                 g = h[6], hh = h[7];
        for (int i = 0; i < 64; ++i) {
            uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            uint32_t ch = (e & f) ^ (~e & g);
            uint32_t t1 = hh + S1 + ch + K[i] + w[i];
            uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            uint32_t mj = (a & b) ^ (a & c) ^ (b & c);
            uint32_t t2 = S0 + mj;
            hh = g; g = f; f = e; e = d + t1;
            d = c; c = b; b = a; a = t1 + t2;
        }
        h[0] += a; h[1] += b; h[2] += c; h[3] += d;
        h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
    }

    void update(const unsigned char* p, size_t n) {
        len += n;
        while (n) {
            size_t take = std::min(n, 64 - fill);
            std::copy(p, p + take, buf + fill);
            fill += take; p += take; n -= take;
            if (fill == 64) { block(buf); fill = 0; }
        }
    }

    std::string hex() {
        uint64_t bits = len * 8;
        unsigned char pad = 0x80;
        update(&pad, 1);
        unsigned char zero = 0;
        while (fill != 56) update(&zero, 1);
        unsigned char lenb[8];
        for (int i = 0; i < 8; ++i) lenb[i] = (unsigned char)(bits >> (56 - 8 * i));
        update(lenb, 8);
        static const char* digits = "0123456789abcdef";
        std::string out;
        for (uint32_t v : h)
            for (int s = 28; s >= 0; s -= 4) out += digits[(v >> s) & 0xf];
        return out;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("fixtures", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

std::string sha256_hex(const std::string& bytes) {
    Sha256 s;
    s.update((const unsigned char*)bytes.data(), bytes.size());
    return s.hex();
}

std::string fixture_dir() {
    if (const char* env = std::getenv("ALMAFF_FIXTURE_DIR")) return env;
    return "data/fixtures";
}

std::vector<FixtureEntry> load_fixture(const std::string& mode) {
    return load_fixture(mode, fixture_dir());
}

std::vector<FixtureEntry> load_fixture(const std::string& mode,
                                       const std::string& dir) {
    if (mode != "super" && mode != "even")
        throw Error("fixtures", "unknown fixture mode: " + mode);
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_file(dir + "/manifest.json"));
    } catch (const nlohmann::json::exception& e) {
        throw Error("fixtures", std::string("bad manifest: ") + e.what());
    }
    const auto& info = manifest.at("modes").at(mode);
    std::string fname = info.at("file").get<std::string>();
    std::string blob = read_file(dir + "/" + fname);
    if (sha256_hex(blob) != info.at("sha256").get<std::string>())
        throw Error("fixtures", "checksum mismatch for " + fname);

    std::vector<FixtureEntry> entries;
    std::istringstream lines(blob);
    std::string line;
    int docs_seen = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw Error("fixtures", std::string("bad fixture line: ") + e.what());
        }
        FixtureDoc fd;
        fd.pair = pair_from_json(doc);
        ++docs_seen;
        if (!zero_symmetric(fd.pair))
            throw Error("fixtures", "zero pattern not symmetric: " + fd.pair.label);
        if (doc.contains("annotations"))
            for (const auto& [node, names] : doc.at("annotations").items()) {
                int k = std::stoi(node);
                if (k < 1 || k > fd.pair.n)
                    throw Error("fixtures", "annotation node out of range: " +
                                                fd.pair.label);
                fd.annotations[k] = names.get<std::vector<std::string>>();
            }
        std::string label = fd.pair.label;
        if (entries.empty() || entries.back().label != label) {
            FixtureEntry e;
            e.label = label;
            e.size = fd.pair.n;
            if (doc.contains("symmetrizable"))
                e.symmetrizable_flag = doc.at("symmetrizable").get<bool>();
            if (doc.contains("root")) {
                e.parametric = true;
                e.root = Scalar::parse(doc.at("root").get<std::string>());
                e.constraint = doc.at("constraint").get<std::vector<long>>();
            }
            entries.push_back(std::move(e));
        }
        if (entries.back().size != fd.pair.n)
            throw Error("fixtures", "size varies inside entry " + label);
        entries.back().docs.push_back(std::move(fd));
    }

    // counts must match the manifest
    if (docs_seen != info.at("documents").get<int>())
        throw Error("fixtures", "document count mismatch in " + fname);
    if ((int)entries.size() != info.at("entries").get<int>())
        throw Error("fixtures", "entry count mismatch in " + fname);
    std::map<int, int> by_size;
    for (const auto& e : entries) by_size[e.size]++;
    for (const auto& [sz, cnt] : info.at("sizes").items())
        if (by_size[std::stoi(sz)] != cnt.get<int>())
            throw Error("fixtures", "per-size count mismatch in " + fname);
    return entries;
}

VerifyReport verify_fixture(const std::vector<ResultClass>& result,
                            const std::vector<FixtureEntry>& fixture,
                            const Annotator& annotator) {
    VerifyReport rep;
    std::unordered_map<std::string, int> key_to_class;
    for (int c = 0; c < (int)result.size(); ++c)
        for (const auto& k : result[c].orbit_keys) key_to_class.emplace(k, c);

    std::vector<char> class_hit(result.size(), 0);
    for (const auto& e : fixture) {
        int cls = -1;
        bool split = false;
        for (const auto& d : e.docs) {
            auto key = canonical_key(normalize(d.pair));
            auto it = key_to_class.find(key);
            if (it == key_to_class.end()) { cls = -1; split = false; break; }
            if (cls == -1) cls = it->second;
            else if (cls != it->second) split = true;
        }
        if (cls < 0) {
            rep.missing.push_back(e.label);
            continue;
        }
        if (split) {
            rep.mismatches.push_back(e.label + ": matrices split across classes");
            continue;
        }
        class_hit[cls] = 1;
        ++rep.matched;
        if (result[cls].symmetrizable != e.symmetrizable_flag)
            rep.mismatches.push_back(e.label + ": symmetrizability flag differs");
        if (!annotator) continue;
        for (const auto& d : e.docs) {
            auto computed = annotator(d.pair);
            for (int node = 0; node < d.pair.n; ++node) {
                std::vector<std::string> printed;
                auto it = d.annotations.find(node + 1);
                if (it != d.annotations.end()) printed = it->second;
                std::vector<std::string> comp = computed[node];
                std::sort(printed.begin(), printed.end());
                std::sort(comp.begin(), comp.end());
                // every printed name must be computed, and anything computed
                // beyond the printed list must be an omittable summand
                std::vector<std::string> extra_comp, missing_printed;
                std::set_difference(comp.begin(), comp.end(), printed.begin(),
                                    printed.end(), std::back_inserter(extra_comp));
                std::set_difference(printed.begin(), printed.end(), comp.begin(),
                                    comp.end(), std::back_inserter(missing_printed));
                bool ok = missing_printed.empty();
                for (const auto& nm : extra_comp)
                    if (nm != "A_1" && nm != "osp(1|2)") ok = false;
                if (!ok) {
                    std::string detail = e.label + " node " +
                                         std::to_string(node + 1) + ": printed [";
                    for (const auto& nm : printed) detail += nm + " ";
                    detail += "] computed [";
                    for (const auto& nm : comp) detail += nm + " ";
                    detail += "]";
                    rep.mismatches.push_back(detail);
                }
            }
        }
    }
    for (size_t c = 0; c < result.size(); ++c)
        if (!class_hit[c])
            rep.extra.push_back(result[c].representative.label.empty()
                                    ? canonical_key(result[c].representative)
                                    : result[c].representative.label);
    rep.ok = rep.missing.empty() && rep.extra.empty() && rep.mismatches.empty() &&
             rep.matched == (int)fixture.size() &&
             rep.matched == (int)result.size();
    return rep;
}

nlohmann::json verify_to_json(const VerifyReport& r) {
    nlohmann::json doc;
    doc["ok"] = r.ok;
    doc["matched"] = r.matched;
    doc["missing"] = r.missing;
    doc["extra"] = r.extra;
    doc["mismatches"] = r.mismatches;
    return doc;
}

} // namespace almaff
