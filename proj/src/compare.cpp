#include "scholar/compare.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>

#include "json.hpp"
#include "scholar/career.hpp"
#include "scholar/text.hpp"

namespace scholar {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Everything a distance computation needs for one author.
struct AuthorSeqs {
    VenueScoreSequence score_seq;
    std::vector<int> scores;
    YearlySetSequence set_seq;
};

AuthorSeqs build_seqs(const CorpusSnapshot& c, const RankingTable& ranking,
                      const std::string& id, const CompareOptions& opt) {
    AuthorSeqs s;
    s.score_seq = build_score_sequence(c, ranking, id, opt.unranked);
    s.scores = s.score_seq.scores();
    if (opt.align.mode == AlignMode::Jaccard)
        s.set_seq = build_set_sequence(c, ranking, id, opt.unranked);
    return s;
}

PaperSim sim_from_store(const TopicVectorStore* store) {
    if (!store)
        throw CompareError("topic mode requires a topic vector store (run topics first)");
    return [store](const std::string& a, const std::string& b) {
        return store->similarity(a, b);
    };
}

double seq_distance(const AuthorSeqs& a, const AuthorSeqs& b, const CompareOptions& opt) {
    switch (opt.align.mode) {
        case AlignMode::Categorical:
            return edit_distance_categorical(a.scores, b.scores).distance;
        case AlignMode::Jaccard:
            return edit_distance_jaccard(a.set_seq, b.set_seq).distance;
        case AlignMode::Topic:
            return topic_edit_distance(a.score_seq, b.score_seq,
                                       sim_from_store(opt.topics), opt.align)
                .distance;
        case AlignMode::CategoricalPrefix:
            return prefix_distance_categorical(a.scores, b.scores).distance;
        case AlignMode::TopicPrefix:
            return prefix_distance_topic(a.score_seq, b.score_seq,
                                         sim_from_store(opt.topics), opt.align)
                .distance;
    }
    throw CompareError("invalid alignment mode");
}

// Run fn(index) over [0, n) on up to `jobs` threads, contiguous chunks.
void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    size_t workers = std::min<size_t>(static_cast<size_t>(jobs), n);
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex error_mu;
    for (size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                for (size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

std::string format_distance(double d) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", d);
    return buf;
}

void atomic_write(const fs::path& path, const std::string& data) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
        if (!out) throw CompareError("cannot write " + tmp.string());
        out << data;
        out.flush();
        if (!out) throw CompareError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace

std::vector<std::string> candidate_pool(const CorpusSnapshot& c, const RankingTable& ranking,
                                        const CandidateFilter& f, UnrankedPolicy unranked) {
    std::set<std::string> allow;
    if (f.allowlist) allow.insert(f.allowlist->begin(), f.allowlist->end());

    std::vector<std::string> pool;
    for (const auto& [id, a] : c.authors()) {
        if (f.allowlist && !allow.count(id)) continue;
        if (static_cast<int>(a.paper_ids.size()) < f.min_papers) continue;
        CareerProfile p = career_profile(c, id);
        if (p.period < f.min_period) continue;
        bool scoreable = unranked == UnrankedPolicy::ScoreOne;
        if (!scoreable)
            for (const auto& pid : a.paper_ids)
                if (ranking.score_of(c.paper(pid).venue_key)) {
                    scoreable = true;
                    break;
                }
        if (!scoreable) continue;
        pool.push_back(id);
    }
    return pool;  // authors() iterates sorted, so the pool is sorted
}

double author_distance(const CorpusSnapshot& c, const RankingTable& ranking,
                       const std::string& a, const std::string& b,
                       const CompareOptions& opt) {
    AuthorSeqs sa = build_seqs(c, ranking, a, opt);
    AuthorSeqs sb = build_seqs(c, ranking, b, opt);
    return seq_distance(sa, sb, opt);
}

std::string ComparableSet::to_json() const {
    json nbrs = json::array();
    for (const auto& n : neighbors) nbrs.push_back({{"author", n.author_id},
                                                    {"distance", n.distance}});
    json j{{"query", query},
           {"mode", align_mode_name(mode)},
           {"k", k},
           {"neighbors", nbrs},
           {"stats",
            {{"mean", mean_distance}, {"min", min_distance}, {"max", max_distance}}}};
    return j.dump(2) + "\n";
}

ComparableSet top_k_comparable(const CorpusSnapshot& c, const RankingTable& ranking,
                               const std::string& query_id, int k,
                               const CandidateFilter& f, const CompareOptions& opt) {
    if (!c.has_author(query_id)) throw CompareError("unknown query author: " + query_id);
    if (k < 1) throw CompareError("k must be at least 1");

    auto pool = candidate_pool(c, ranking, f, opt.unranked);
    if (!std::binary_search(pool.begin(), pool.end(), query_id))
        std::cerr << "warning: query author '" << query_id
                  << "' does not pass the candidate filter; computing anyway\n";

    AuthorSeqs query_seqs = build_seqs(c, ranking, query_id, opt);

    std::vector<AuthorSeqs> pool_seqs(pool.size());
    parallel_for(pool.size(), opt.jobs, [&](size_t i) {
        pool_seqs[i] = build_seqs(c, ranking, pool[i], opt);
    });

    std::vector<Neighbor> all(pool.size(), Neighbor{"", 0.0});
    parallel_for(pool.size(), opt.jobs, [&](size_t i) {
        all[i] = {pool[i], seq_distance(query_seqs, pool_seqs[i], opt)};
    });
    std::erase_if(all, [&](const Neighbor& n) { return n.author_id == query_id; });
    std::sort(all.begin(), all.end(), [](const Neighbor& x, const Neighbor& y) {
        if (x.distance != y.distance) return x.distance < y.distance;
        return x.author_id < y.author_id;
    });
    if (static_cast<int>(all.size()) > k) all.resize(static_cast<size_t>(k));

    ComparableSet out;
    out.query = query_id;
    out.mode = opt.align.mode;
    out.k = k;
    out.neighbors = std::move(all);
    if (!out.neighbors.empty()) {
        double sum = 0;
        out.min_distance = out.neighbors.front().distance;
        out.max_distance = out.neighbors.back().distance;
        for (const auto& n : out.neighbors) sum += n.distance;
        out.mean_distance = sum / static_cast<double>(out.neighbors.size());
    }
    return out;
}

long long all_pairs(const CorpusSnapshot& c, const RankingTable& ranking,
                    const CandidateFilter& f, const std::string& output_path,
                    const AllPairsOptions& opt) {
    const CompareOptions& cmp = opt.compare;
    auto pool = candidate_pool(c, ranking, f, cmp.unranked);
    const size_t p = pool.size();
    const long long total_pairs = static_cast<long long>(p) * (static_cast<long long>(p) - 1) / 2;
    if (total_pairs > opt.pair_budget)
        std::cerr << "warning: " << total_pairs << " pairs exceed the budget of "
                  << opt.pair_budget << "\n";

    std::string pool_digest;
    {
        std::string ids = align_mode_name(cmp.align.mode);
        for (const auto& id : pool) {
            ids.push_back('\n');
            ids += id;
        }
        pool_digest = hex64(fnv1a64(ids));
    }

    const fs::path out_path(output_path);
    const fs::path ckpt_path(output_path + ".ckpt");

    size_t start_row = 0;
    std::uintmax_t valid_bytes = 0;
    if (fs::exists(ckpt_path) && fs::exists(out_path)) {
        json ck;
        try {
            std::ifstream in(ckpt_path, std::ios::binary);
            in >> ck;
        } catch (const json::exception& e) {
            throw CompareError(ckpt_path.string() + ": corrupt checkpoint: " + e.what());
        }
        if (ck.value("pool_digest", "") == pool_digest) {
            start_row = ck.at("rows_done").get<size_t>();
            valid_bytes = ck.at("bytes").get<std::uintmax_t>();
            // drop any partial row written after the last checkpoint
            if (fs::file_size(out_path) < valid_bytes)
                throw CompareError(ckpt_path.string() +
                                   ": checkpoint ahead of output file");
            fs::resize_file(out_path, valid_bytes);
        } else {
            std::cerr << "warning: checkpoint does not match this pool/mode; restarting\n";
        }
    }

    std::ofstream out;
    if (start_row > 0) {
        out.open(out_path, std::ios::binary | std::ios::app);
    } else {
        out.open(out_path, std::ios::binary | std::ios::trunc);
        valid_bytes = 0;
    }
    if (!out) throw CompareError("cannot write " + output_path);

    std::vector<AuthorSeqs> seqs(p);
    parallel_for(p, cmp.jobs,
                 [&](size_t i) { seqs[i] = build_seqs(c, ranking, pool[i], cmp); });

    const std::string mode_name = align_mode_name(cmp.align.mode);
    long long written = 0;
    int rows_this_run = 0;
    for (size_t i = start_row; i < p; ++i) {
        std::vector<double> row(p, 0.0);
        parallel_for(p - i - 1, cmp.jobs, [&](size_t off) {
            size_t j = i + 1 + off;
            row[j] = seq_distance(seqs[i], seqs[j], cmp);
        });
        std::string buf;
        for (size_t j = i + 1; j < p; ++j) {
            buf += pool[i];
            buf.push_back('\t');
            buf += pool[j];
            buf.push_back('\t');
            buf += mode_name;
            buf.push_back('\t');
            buf += format_distance(row[j]);
            buf.push_back('\n');
            ++written;
        }
        out << buf;
        out.flush();
        if (!out) throw CompareError("write failed for " + output_path);
        valid_bytes += buf.size();

        json ck{{"rows_done", i + 1}, {"bytes", valid_bytes}, {"pool_size", p},
                {"pool_digest", pool_digest}};
        atomic_write(ckpt_path, ck.dump() + "\n");

        ++rows_this_run;
        if (opt.interrupt_after_rows > 0 && rows_this_run >= opt.interrupt_after_rows &&
            i + 1 < p)
            return written;  // simulated kill; checkpoint stays behind
    }
    return written;
}

}  // namespace scholar
