#include "scholar/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "scholar/text.hpp"

namespace scholar {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void validate_paper(const PaperRecord& p, const std::string& where) {
    if (p.paper_id.empty()) throw CorpusError(where + ": empty paper_id");
    if (normalize_title(p.title).empty())
        throw CorpusError(where + ": empty title for paper " + p.paper_id);
    if (p.year < 1900 || p.year > 2100)
        throw CorpusError(where + ": year " + std::to_string(p.year) +
                          " out of range for paper " + p.paper_id);
    if (p.author_ids.empty())
        throw CorpusError(where + ": paper " + p.paper_id + " has no authors");
    if (p.venue_key.empty())
        throw CorpusError(where + ": paper " + p.paper_id + " has empty venue");
    if (p.citation_count && *p.citation_count < 0)
        throw CorpusError(where + ": negative citations for paper " + p.paper_id);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw CorpusError("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& data) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw CorpusError("cannot write " + p.string());
    out << data;
    if (!out) throw CorpusError("write failed for " + p.string());
}

// Join key for the cross-source paper match.
std::string merge_key(const PaperRecord& p) {
    std::vector<std::string> names;
    names.reserve(p.author_ids.size());
    for (const auto& a : p.author_ids) names.push_back(normalize_author_name(a));
    std::sort(names.begin(), names.end());
    std::string key = normalize_title(p.title);
    for (const auto& n : names) {
        key.push_back('\x1f');
        key += n;
    }
    return key;
}

}  // namespace

const PaperRecord& CorpusSnapshot::paper(const std::string& id) const {
    auto it = papers_.find(id);
    if (it == papers_.end()) throw CorpusError("unknown paper id: " + id);
    return it->second;
}

const AuthorRecord& CorpusSnapshot::author(const std::string& id) const {
    auto it = authors_.find(id);
    if (it == authors_.end()) throw CorpusError("unknown author id: " + id);
    return it->second;
}

std::vector<PaperRecord> CorpusSnapshot::author_papers(const std::string& author_id) const {
    const AuthorRecord& a = author(author_id);
    std::vector<PaperRecord> out;
    out.reserve(a.paper_ids.size());
    for (const auto& pid : a.paper_ids) out.push_back(paper(pid));
    return out;  // paper_ids already sorted by (year, paper_id)
}

CorpusSnapshot CorpusSnapshot::from_papers(
    std::vector<PaperRecord> papers, std::map<std::string, std::string> provenance,
    const std::map<std::string, std::string>& display_names) {
    CorpusSnapshot s;
    s.provenance_ = std::move(provenance);
    for (auto& p : papers) {
        validate_paper(p, "paper " + p.paper_id);
        // author_ids become normalized name strings here; raw names kept as
        // display names on the author records
        std::vector<std::string> raw_names = p.author_ids;
        p.author_ids.clear();
        for (const auto& raw : raw_names) {
            std::string id = normalize_author_name(raw);
            if (id.empty()) throw CorpusError("paper " + p.paper_id + ": blank author name");
            if (std::find(p.author_ids.begin(), p.author_ids.end(), id) ==
                p.author_ids.end())
                p.author_ids.push_back(id);
            auto [it, inserted] = s.authors_.try_emplace(id);
            if (inserted) {
                it->second.author_id = id;
                it->second.display_name = trim(raw);
            }
            it->second.paper_ids.push_back(p.paper_id);
        }
        std::string raw_venue = p.venue_key;
        p.venue_key = normalize_venue_key(raw_venue);
        if (p.venue_key.empty())
            throw CorpusError("paper " + p.paper_id + ": venue normalizes to empty");
        auto [vit, vinserted] = s.venues_.try_emplace(p.venue_key);
        if (vinserted) vit->second.venue_key = p.venue_key;
        vit->second.full_names.insert(trim(raw_venue));

        auto [pit, pinserted] = s.papers_.try_emplace(p.paper_id, std::move(p));
        if (!pinserted) throw CorpusError("duplicate paper_id: " + pit->first);
    }
    for (auto& [id, a] : s.authors_) {
        std::sort(a.paper_ids.begin(), a.paper_ids.end(),
                  [&](const std::string& x, const std::string& y) {
                      const auto& px = s.papers_.at(x);
                      const auto& py = s.papers_.at(y);
                      return std::tie(px.year, x) < std::tie(py.year, y);
                  });
        a.paper_ids.erase(std::unique(a.paper_ids.begin(), a.paper_ids.end()),
                          a.paper_ids.end());
        auto dn = display_names.find(id);
        if (dn != display_names.end()) a.display_name = dn->second;
    }
    return s;
}

CorpusSnapshot ingest_papers(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open " + path);

    std::vector<PaperRecord> papers;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw CorpusError(where + ": parse error: " + e.what());
        }
        PaperRecord p;
        try {
            for (const char* key : {"paper_id", "title", "year", "venue", "authors"})
                if (!j.contains(key))
                    throw CorpusError(where + ": missing required field '" +
                                      std::string(key) + "'");
            p.paper_id = j.at("paper_id").get<std::string>();
            p.title = j.at("title").get<std::string>();
            p.year = j.at("year").get<int>();
            p.venue_key = j.at("venue").get<std::string>();
            p.author_ids = j.at("authors").get<std::vector<std::string>>();
            if (j.contains("abstract") && !j.at("abstract").is_null())
                p.abstract = j.at("abstract").get<std::string>();
            if (j.contains("citations") && !j.at("citations").is_null())
                p.citation_count = j.at("citations").get<int>();
        } catch (const json::exception& e) {
            throw CorpusError(where + ": bad field type: " + e.what());
        }
        validate_paper(p, where);
        papers.push_back(std::move(p));
    }

    std::map<std::string, std::string> prov;
    prov[path] = hex64(fnv1a64(read_file(path)));
    return CorpusSnapshot::from_papers(std::move(papers), std::move(prov));
}

CorpusSnapshot merge_corpora(const CorpusSnapshot& a, const CorpusSnapshot& b) {
    std::map<std::string, std::string> key_to_id;  // merge key -> paper id in `a`
    for (const auto& [id, p] : a.papers()) key_to_id[merge_key(p)] = id;

    std::vector<PaperRecord> merged;
    std::map<std::string, PaperRecord> out = a.papers();
    std::set<std::string> used_ids;
    for (const auto& [id, p] : out) used_ids.insert(id);

    for (const auto& [bid, bp] : b.papers()) {
        auto it = key_to_id.find(merge_key(bp));
        if (it != key_to_id.end()) {
            PaperRecord& ap = out.at(it->second);
            if (!ap.abstract && bp.abstract) ap.abstract = bp.abstract;
            if (!ap.citation_count && bp.citation_count)
                ap.citation_count = bp.citation_count;
        } else {
            PaperRecord np = bp;
            // resolve an id collision between distinct papers of the two sources
            while (used_ids.count(np.paper_id)) np.paper_id += "~b";
            used_ids.insert(np.paper_id);
            out.emplace(np.paper_id, std::move(np));
        }
    }

    merged.reserve(out.size());
    for (auto& [id, p] : out) merged.push_back(std::move(p));

    std::map<std::string, std::string> prov = a.provenance();
    for (const auto& [k, v] : b.provenance()) prov.emplace(k, v);
    std::map<std::string, std::string> display;
    for (const auto& [id, rec] : b.authors()) display[id] = rec.display_name;
    for (const auto& [id, rec] : a.authors()) display[id] = rec.display_name;
    return CorpusSnapshot::from_papers(std::move(merged), std::move(prov), display);
}

namespace {

json paper_to_json(const PaperRecord& p) {
    json j{{"paper_id", p.paper_id}, {"title", p.title},     {"year", p.year},
           {"venue", p.venue_key},   {"authors", p.author_ids}};
    if (p.abstract) j["abstract"] = *p.abstract;
    if (p.citation_count) j["citations"] = *p.citation_count;
    return j;
}

}  // namespace

void CorpusSnapshot::persist(const std::string& dir) const {
    fs::create_directories(dir);
    std::map<std::string, std::string> files;
    {
        std::string data;
        for (const auto& [id, p] : papers_) data += paper_to_json(p).dump() + "\n";
        files["papers.jsonl"] = std::move(data);
    }
    {
        std::string data;
        for (const auto& [id, a] : authors_) {
            json j{{"author_id", a.author_id},
                   {"display_name", a.display_name},
                   {"paper_ids", a.paper_ids}};
            data += j.dump() + "\n";
        }
        files["authors.jsonl"] = std::move(data);
    }
    {
        std::string data;
        for (const auto& [key, v] : venues_) {
            json j{{"venue_key", v.venue_key},
                   {"full_names", std::vector<std::string>(v.full_names.begin(),
                                                           v.full_names.end())}};
            data += j.dump() + "\n";
        }
        files["venues.jsonl"] = std::move(data);
    }
    json manifest{{"version", 1},
                  {"counts",
                   {{"papers", papers_.size()},
                    {"authors", authors_.size()},
                    {"venues", venues_.size()}}},
                  {"provenance", provenance_}};
    json digests = json::object();
    for (const auto& [name, data] : files) digests[name] = hex64(fnv1a64(data));
    manifest["digests"] = digests;

    for (const auto& [name, data] : files) write_file(fs::path(dir) / name, data);
    write_file(fs::path(dir) / "manifest.json", manifest.dump(2) + "\n");
}

CorpusSnapshot CorpusSnapshot::load(const std::string& dir) {
    json manifest = json::parse(read_file(fs::path(dir) / "manifest.json"));
    for (const auto& [name, digest] : manifest.at("digests").items()) {
        std::string data = read_file(fs::path(dir) / name);
        if (hex64(fnv1a64(data)) != digest.get<std::string>())
            throw CorpusError("digest mismatch for " + name + " in " + dir);
    }

    std::vector<PaperRecord> papers;
    std::istringstream in(read_file(fs::path(dir) / "papers.jsonl"));
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        json j = json::parse(line);
        PaperRecord p;
        p.paper_id = j.at("paper_id").get<std::string>();
        p.title = j.at("title").get<std::string>();
        p.year = j.at("year").get<int>();
        p.venue_key = j.at("venue").get<std::string>();
        p.author_ids = j.at("authors").get<std::vector<std::string>>();
        if (j.contains("abstract")) p.abstract = j.at("abstract").get<std::string>();
        if (j.contains("citations")) p.citation_count = j.at("citations").get<int>();
        papers.push_back(std::move(p));
    }
    std::map<std::string, std::string> prov;
    if (manifest.contains("provenance"))
        prov = manifest.at("provenance").get<std::map<std::string, std::string>>();
    CorpusSnapshot s = from_papers(std::move(papers), std::move(prov));

    // papers carry normalized author ids, so display names must come from
    // the persisted author table
    std::istringstream ain(read_file(fs::path(dir) / "authors.jsonl"));
    while (std::getline(ain, line)) {
        if (trim(line).empty()) continue;
        json j = json::parse(line);
        auto it = s.authors_.find(j.at("author_id").get<std::string>());
        if (it == s.authors_.end())
            throw CorpusError("authors.jsonl names unknown author in " + dir);
        it->second.display_name = j.at("display_name").get<std::string>();
    }

    // likewise the original venue spellings
    std::istringstream vin(read_file(fs::path(dir) / "venues.jsonl"));
    while (std::getline(vin, line)) {
        if (trim(line).empty()) continue;
        json j = json::parse(line);
        auto it = s.venues_.find(j.at("venue_key").get<std::string>());
        if (it == s.venues_.end())
            throw CorpusError("venues.jsonl names unknown venue in " + dir);
        it->second.full_names.clear();
        for (const auto& n : j.at("full_names"))
            it->second.full_names.insert(n.get<std::string>());
    }
    return s;
}

}  // namespace scholar
