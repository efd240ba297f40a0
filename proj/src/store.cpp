#include "weilval/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <condition_variable>
#include <cstdio>
#include <cstring>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

namespace weilval {

namespace {

void write_all(int fd, const std::string& data) {
    size_t off = 0;
    while (off < data.size()) {
        ssize_t k = ::write(fd, data.data() + off, data.size() - off);
        if (k < 0) throw UsageError("write to scan store failed: " + std::string(strerror(errno)));
        off += static_cast<size_t>(k);
    }
}

} // namespace

ScanStore::ScanStore(std::string path, std::string header_line, bool resume,
                     const std::function<void(const std::string&)>& replay)
    : path_(std::move(path)), header_(std::move(header_line)) {
    if (header_.empty() || header_.back() != '\n') header_ += '\n';

    std::string existing;
    if (resume) {
        FILE* f = std::fopen(path_.c_str(), "rb");
        if (f) {
            char buf[1 << 16];
            size_t k;
            while ((k = std::fread(buf, 1, sizeof buf, f)) > 0) existing.append(buf, k);
            std::fclose(f);
        }
    }

    i64 keep_bytes = 0;
    if (!existing.empty()) {
        if (existing.size() < header_.size() ||
            existing.compare(0, header_.size(), header_) != 0)
            throw UsageError("resume refused: existing store was written with different "
                             "parameters; remove " + path_ + " or drop --resume");
        keep_bytes = static_cast<i64>(header_.size());
        size_t pos = header_.size();
        std::vector<std::string> pending; // records not yet sealed by a ckpt
        while (pos < existing.size()) {
            size_t nl = existing.find('\n', pos);
            if (nl == std::string::npos) break; // trailing partial line
            std::string line = existing.substr(pos, nl - pos);
            pos = nl + 1;
            try {
                auto j = nlohmann::json::parse(line);
                std::string type = j.value("type", "");
                if (type == "ckpt") {
                    i64 c = j.at("chunk").get<i64>();
                    if (c != next_chunk_)
                        throw UsageError("resume refused: checkpoint sequence is corrupt; "
                                         "remove " + path_ + " or drop --resume");
                    next_chunk_ = c + 1;
                    keep_bytes = static_cast<i64>(pos);
                    if (replay)
                        for (const auto& rec : pending) replay(rec);
                    pending.clear();
                } else if (type == "summary") {
                    complete_ = true;
                    summary_ = line;
                    keep_bytes = static_cast<i64>(pos);
                } else {
                    pending.push_back(line);
                }
            } catch (const nlohmann::json::exception&) {
                throw UsageError("resume refused: store contains an unparseable line; "
                                 "remove " + path_ + " or drop --resume");
            }
        }
    }

    if (complete_) return; // nothing to write; leave the file untouched

    fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT, 0644);
    if (fd_ < 0) throw UsageError("cannot open scan store " + path_);
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        ::close(fd_);
        fd_ = -1;
        throw UsageError("scan store " + path_ + " is in use by another process");
    }
    if (keep_bytes > 0) {
        if (::ftruncate(fd_, keep_bytes) != 0 || ::lseek(fd_, 0, SEEK_END) < 0)
            throw UsageError("cannot truncate scan store for resume");
    } else {
        if (::ftruncate(fd_, 0) != 0) throw UsageError("cannot reset scan store");
        write_all(fd_, header_);
    }
}

ScanStore::~ScanStore() {
    if (fd_ >= 0) ::close(fd_);
}

void ScanStore::commit_chunk(i64 chunk, const std::vector<std::string>& record_lines) {
    if (complete_) throw UsageError("store is already complete");
    if (chunk != next_chunk_) throw DefectError("chunks must be committed in order");
    std::string out;
    for (const auto& line : record_lines) {
        out += line;
        out += '\n';
    }
    out += "{\"type\":\"ckpt\",\"chunk\":" + std::to_string(chunk) + "}\n";
    write_all(fd_, out);
    ++next_chunk_;
}

void ScanStore::finish(const std::string& summary_line) {
    if (complete_) return;
    std::string line = summary_line;
    if (line.empty() || line.back() != '\n') line += '\n';
    write_all(fd_, line);
    summary_ = summary_line;
    complete_ = true;
    ::fsync(fd_);
}

void run_chunked(i64 first, i64 count, int jobs,
                 const std::function<std::vector<std::string>(i64)>& compute,
                 const std::function<void(i64, const std::vector<std::string>&)>& sink) {
    if (jobs < 1) jobs = 1;
    if (first >= count) return;
    if (jobs == 1) {
        for (i64 c = first; c < count; ++c) sink(c, compute(c));
        return;
    }

    std::mutex mu;
    std::condition_variable cv;
    i64 next_to_take = first;
    i64 next_to_emit = first;
    std::map<i64, std::vector<std::string>> done;
    std::exception_ptr failure;

    auto worker = [&]() {
        while (true) {
            i64 mine;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (failure || next_to_take >= count) return;
                mine = next_to_take++;
            }
            std::vector<std::string> lines;
            try {
                lines = compute(mine);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
                cv.notify_all();
                return;
            }
            {
                std::lock_guard<std::mutex> lock(mu);
                done.emplace(mine, std::move(lines));
                cv.notify_all();
            }
        }
    };

    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);

    {
        std::unique_lock<std::mutex> lock(mu);
        while (next_to_emit < count) {
            cv.wait(lock, [&] {
                return failure != nullptr || done.count(next_to_emit) > 0;
            });
            if (failure) break;
            auto it = done.find(next_to_emit);
            std::vector<std::string> lines = std::move(it->second);
            done.erase(it);
            lock.unlock();
            sink(next_to_emit, lines);
            ++next_to_emit;
            lock.lock();
        }
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

std::string config_hash(const std::string& canonical_params) {
    u64 h = 1469598103934665603ULL;
    for (unsigned char c : canonical_params) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace weilval
