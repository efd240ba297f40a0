#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weilval/common.hpp"

namespace weilval {

/// Line-delimited JSON persistence for long scans.
///
/// File layout: one header line, then per-chunk record lines each followed by
/// a checkpoint line {"type":"ckpt","chunk":k}, and one final summary line.
/// Chunks are numbered in a deterministic order derived from the scan
/// parameters, so two runs of the same scan produce byte-identical files
/// regardless of worker count, and a resumed run continues after the last
/// complete checkpoint (a trailing partial line is truncated away).
class ScanStore {
public:
    /// Open for writing. When resume is true and the file exists, the header
    /// must match byte-for-byte and writing continues after the last intact
    /// checkpoint; a mismatched or unparseable prefix is refused with a
    /// recovery hint. Returns through first_pending_chunk() where to restart.
    /// Record lines retained from a resumed file are fed to `replay` so the
    /// caller can rebuild its running aggregates.
    ScanStore(std::string path, std::string header_line, bool resume,
              const std::function<void(const std::string&)>& replay = {});
    ~ScanStore();

    /// First chunk index that still needs computing (0 on a fresh file).
    i64 first_pending_chunk() const { return next_chunk_; }
    /// True when the existing file already carries a summary line.
    bool complete() const { return complete_; }
    /// Summary line of a completed store (only valid when complete()).
    const std::string& summary_line() const { return summary_; }

    /// Append the record lines of one chunk plus its checkpoint. Chunks must
    /// arrive in ascending order.
    void commit_chunk(i64 chunk, const std::vector<std::string>& record_lines);

    void finish(const std::string& summary_line);

    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::string header_;
    std::string summary_;
    i64 next_chunk_ = 0;
    bool complete_ = false;
    int fd_ = -1;
};

/// Deterministic parallel chunk runner: computes chunks [first, count) with
/// `jobs` worker threads and hands results to `sink` strictly in chunk order.
/// Worker results are pure functions of the chunk index.
void run_chunked(i64 first, i64 count, int jobs,
                 const std::function<std::vector<std::string>(i64)>& compute,
                 const std::function<void(i64, const std::vector<std::string>&)>& sink);

/// FNV-1a over a canonical parameter string; stable across platforms.
std::string config_hash(const std::string& canonical_params);

} // namespace weilval
