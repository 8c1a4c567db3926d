#pragma once

// Annotation sessions: loaded batches plus an append-only decision log.
//
// Log format, one JSON object per line:
//   {"seq":12,"time":"2024-05-01T10:00:00.123Z","batch":"nl-sample","annotator":"a1",
//    "id":"violence:kill","category":"violence","semantically_correct":true,
//    "contextually_correct":false,"replacement":"doden","additions":"moorden;slachten"}
//
// A later line for the same (batch, record, annotator) supersedes earlier
// ones; nothing is rewritten. `replacement` is "-" for removal and "" when
// there is none.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "psylex/error.hpp"
#include "psylex/lexicon/dictionary.hpp"
#include "psylex/lexicon/formats.hpp"
#include "psylex/text/unicode.hpp"
#include "psylex/translate/annotation.hpp"

namespace psylex {

/// A decision for a record the batch does not contain.
class UnknownRecordError : public Error {
 public:
  using Error::Error;
};

/// A malformed decision payload. `fields()` names the offending fields.
class PayloadError : public Error {
 public:
  PayloadError(std::vector<std::string> fields, std::vector<std::string> problems)
      : Error(join(problems)), fields_(std::move(fields)), problems_(std::move(problems)) {}

  const std::vector<std::string>& fields() const noexcept { return fields_; }
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& problems) {
    std::string m = "invalid decision";
    for (const auto& p : problems) m += "; " + p;
    return m;
  }

  std::vector<std::string> fields_;
  std::vector<std::string> problems_;
};

/// A decision as submitted: the sheet columns plus batch and annotator.
struct DecisionPayload {
  std::string batch;
  AnnotationDecision decision;
};

namespace detail {

inline std::optional<bool> json_flag(const nlohmann::json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) return parse_flag(v.get<std::string>());
  if (v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1)) return v.get<int>() == 1;
  return std::nullopt;
}

inline std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
#if defined(_WIN32)
  gmtime_s(&tm, &t);
#else
  gmtime_r(&t, &tm);
#endif
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

}  // namespace detail

/// Reads a decision from JSON using the sheet column names. Every problem is
/// collected before throwing PayloadError.
inline DecisionPayload decision_from_json(const nlohmann::json& j) {
  std::vector<std::string> fields;
  std::vector<std::string> problems;
  auto bad = [&](std::string field, std::string problem) {
    if (std::find(fields.begin(), fields.end(), field) == fields.end()) fields.push_back(field);
    problems.push_back(field + ": " + std::move(problem));
  };
  if (!j.is_object()) throw PayloadError({}, {"payload must be a JSON object"});

  auto text = [&](const char* field, bool required) -> std::string {
    const auto it = j.find(field);
    if (it == j.end() || it->is_null()) {
      if (required) bad(field, "required");
      return {};
    }
    if (!it->is_string()) {
      bad(field, "must be a string");
      return {};
    }
    const auto s = it->get<std::string>();
    if (unicode::find_invalid(s)) bad(field, "invalid UTF-8");
    if (required && s.find_first_not_of(" \t") == std::string::npos) bad(field, "must not be empty");
    return s;
  };

  DecisionPayload out;
  out.batch = text("batch", true);
  auto& d = out.decision;
  d.annotator = text("annotator", true);
  d.record_id = text("id", true);
  d.category = text("category", false);
  for (const char* field : {"semantically_correct", "contextually_correct"}) {
    const auto it = j.find(field);
    std::optional<bool> v;
    if (it == j.end() || it->is_null())
      bad(field, "required");
    else if (!(v = detail::json_flag(*it)))
      bad(field, "expected true or false");
    if (v) (std::string_view(field) == "semantically_correct" ? d.semantically_correct : d.contextually_correct) = *v;
  }
  const std::string rep = text("replacement", false);
  std::string_view r = detail::trim_view(rep);
  if (r == kRemoveMarker)
    d.remove = true;
  else if (!r.empty())
    d.replacement = unicode::to_lower(r);

  if (const auto it = j.find("additions"); it != j.end() && !it->is_null()) {
    if (it->is_string()) {
      d.additions = split_additions(it->get<std::string>());
    } else if (it->is_array()) {
      std::string joined;
      for (const auto& a : *it) {
        if (!a.is_string()) {
          bad("additions", "array entries must be strings");
          break;
        }
        joined += (joined.empty() ? "" : ";") + a.get<std::string>();
      }
      d.additions = split_additions(joined);
    } else {
      bad("additions", "must be a string or an array of strings");
    }
  }
  if (problems.empty())
    for (const auto& p : validate_decision(d)) bad(p.substr(0, p.find(':')), p.substr(p.find(':') + 2));
  if (!problems.empty()) throw PayloadError(std::move(fields), std::move(problems));
  return out;
}

inline nlohmann::json decision_to_json(std::string_view batch, const AnnotationDecision& d) {
  return {{"batch", batch},
          {"annotator", d.annotator},
          {"id", d.record_id},
          {"category", d.category},
          {"semantically_correct", d.semantically_correct},
          {"contextually_correct", d.contextually_correct},
          {"replacement", d.remove ? std::string(kRemoveMarker) : d.replacement.value_or("")},
          {"additions", join_additions(d.additions)}};
}

struct BatchProgress {
  std::size_t decided = 0;
  std::size_t total = 0;
};

class SessionStore {
 public:
  /// Decisions of one annotator on one batch, keyed by record id.
  using DecisionMap = std::unordered_map<std::string, AnnotationDecision>;

  /// Opens (creating if needed) the decision log and replays it. Log lines for
  /// batches that are not loaded are kept in memory and reappear once the
  /// batch is added. A torn final line from a crash is ignored.
  explicit SessionStore(std::filesystem::path log_path) : log_path_(std::move(log_path)) {
    auto state = std::make_shared<State>();
    if (std::filesystem::exists(log_path_)) replay(*state);
    state_ = std::move(state);
    // Drop a torn final line so later appends do not bury it mid-file.
    if (torn_offset_) {
      std::filesystem::resize_file(log_path_, *torn_offset_);
      torn_tail_ = false;
    }
    log_.open(log_path_, std::ios::binary | std::ios::app);
    if (!log_) throw Error("cannot open decision log " + log_path_.string());
    if (torn_tail_) log_ << '\n';
  }

  const std::filesystem::path& log_path() const noexcept { return log_path_; }

  /// Number of log lines skipped on replay (torn tail, malformed lines).
  std::size_t skipped_lines() const noexcept { return skipped_; }

  void add_batch(AnnotationSheet sheet) {
    if (sheet.batch_id.empty()) throw Error("batch id must not be empty");
    std::unordered_map<std::string, std::size_t> rows;
    for (std::size_t i = 0; i < sheet.rows.size(); ++i)
      if (!rows.emplace(sheet.rows[i].id, i).second)
        throw Error("batch '" + sheet.batch_id + "' lists record '" + sheet.rows[i].id + "' twice");
    std::lock_guard write(write_mutex_);
    auto next = std::make_shared<State>(*snapshot());
    if (next->batches.contains(sheet.batch_id)) throw Error("batch '" + sheet.batch_id + "' is already loaded");
    auto b = std::make_shared<Batch>();
    b->rows = std::move(rows);
    b->sheet = std::move(sheet);
    next->order.push_back(b->sheet.batch_id);
    next->batches.emplace(b->sheet.batch_id, std::move(b));
    publish(std::move(next));
  }

  std::vector<std::string> batch_ids() const { return snapshot()->order; }

  const AnnotationSheet& sheet(std::string_view batch) const { return find_batch(*snapshot(), batch).sheet; }

  /// Validates and appends a decision, then publishes it. The line is flushed
  /// to the OS before the call returns.
  void record(const DecisionPayload& p) {
    std::lock_guard write(write_mutex_);
    const auto current = snapshot();
    const auto& b = find_batch(*current, p.batch);
    const auto row = b.rows.find(p.decision.record_id);
    if (row == b.rows.end())
      throw UnknownRecordError("batch '" + p.batch + "' has no record '" + p.decision.record_id + "'");
    AnnotationDecision d = p.decision;
    const auto& sheet_category = b.sheet.rows[row->second].category;
    if (!d.category.empty() && category_key(d.category) != category_key(sheet_category))
      throw PayloadError({"category"}, {"category: '" + d.category + "' does not match record '" + d.record_id + "'"});
    d.category = sheet_category;
    if (auto problems = validate_decision(d); !problems.empty()) {
      std::vector<std::string> fields;
      for (const auto& pr : problems) fields.push_back(pr.substr(0, pr.find(':')));
      throw PayloadError(std::move(fields), std::move(problems));
    }

    auto line = decision_to_json(p.batch, d);
    line["seq"] = current->next_seq;
    line["time"] = detail::utc_now();
    log_ << line.dump() << '\n';
    log_.flush();
    if (!log_) throw Error("failed to append to decision log " + log_path_.string());

    auto next = std::make_shared<State>(*current);
    next->next_seq = current->next_seq + 1;
    apply(*next, p.batch, std::move(d));
    publish(std::move(next));
  }

  /// Latest decision per record for one annotator, in sheet order.
  std::vector<AnnotationDecision> decisions(std::string_view batch, std::string_view annotator) const {
    const auto s = snapshot();
    const auto& b = find_batch(*s, batch);
    std::vector<AnnotationDecision> out;
    const auto it = s->decisions.find(key(batch, annotator));
    if (it == s->decisions.end()) return out;
    for (const auto& row : b.sheet.rows)
      if (auto d = it->second->find(row.id); d != it->second->end()) out.push_back(d->second);
    return out;
  }

  /// Annotators with at least one decision on the batch, sorted.
  std::vector<std::string> annotators(std::string_view batch) const {
    const auto s = snapshot();
    find_batch(*s, batch);
    std::vector<std::string> out;
    const std::string prefix = std::string(batch) + '\n';
    for (const auto& [k, m] : s->decisions)
      if (k.starts_with(prefix) && !m->empty()) out.push_back(k.substr(prefix.size()));
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Earliest row in sheet order the annotator has not decided; nullopt when
  /// the batch is complete for them.
  std::optional<std::size_t> next_index(std::string_view batch, std::string_view annotator) const {
    const auto s = snapshot();
    const auto& b = find_batch(*s, batch);
    const auto it = s->decisions.find(key(batch, annotator));
    for (std::size_t i = 0; i < b.sheet.rows.size(); ++i)
      if (it == s->decisions.end() || !it->second->contains(b.sheet.rows[i].id)) return i;
    return std::nullopt;
  }

  BatchProgress progress(std::string_view batch, std::string_view annotator) const {
    const auto s = snapshot();
    const auto& b = find_batch(*s, batch);
    BatchProgress p{0, b.sheet.rows.size()};
    if (const auto it = s->decisions.find(key(batch, annotator)); it != s->decisions.end())
      for (const auto& [id, d] : *it->second) p.decided += b.rows.contains(id) ? 1 : 0;
    return p;
  }

  /// The filled-in sheet for one annotator; same bytes as exporting the same
  /// decisions from a file.
  std::string export_sheet(std::string_view batch, std::string_view annotator) const {
    return export_annotation_sheet(sheet(batch), decisions(batch, annotator));
  }

 private:
  struct Batch {
    AnnotationSheet sheet;
    std::unordered_map<std::string, std::size_t> rows;
  };

  // Immutable once published. Per-annotator maps are shared between
  // snapshots and copied only when that annotator records a decision.
  struct State {
    std::vector<std::string> order;
    std::map<std::string, std::shared_ptr<const Batch>, std::less<>> batches;
    std::map<std::string, std::shared_ptr<const DecisionMap>, std::less<>> decisions;
    std::uint64_t next_seq = 1;
  };

  static std::string key(std::string_view batch, std::string_view annotator) {
    return std::string(batch) + '\n' + std::string(annotator);
  }

  static const Batch& find_batch(const State& s, std::string_view batch) {
    const auto it = s.batches.find(batch);
    if (it == s.batches.end()) throw UnknownRecordError("no batch '" + std::string(batch) + "'");
    return *it->second;
  }

  static void apply(State& s, std::string_view batch, AnnotationDecision d) {
    auto& slot = s.decisions[key(batch, d.annotator)];
    auto copy = slot ? std::make_shared<DecisionMap>(*slot) : std::make_shared<DecisionMap>();
    auto id = d.record_id;
    (*copy)[std::move(id)] = std::move(d);
    slot = std::move(copy);
  }

  void replay(State& s) {
    std::ifstream in(log_path_, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    torn_tail_ = !content.empty() && content.back() != '\n';
    std::size_t pos = 0;
    while (pos < content.size()) {
      auto end = content.find('\n', pos);
      const bool last = end == std::string::npos;
      if (last) end = content.size();
      const std::string_view line(content.data() + pos, end - pos);
      const std::size_t start = pos;
      pos = end + 1;
      if (detail::trim_view(line).empty()) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        auto p = decision_from_json(j);
        if (const auto seq = j.find("seq"); seq != j.end() && seq->is_number_unsigned())
          s.next_seq = std::max(s.next_seq, seq->get<std::uint64_t>() + 1);
        apply(s, p.batch, std::move(p.decision));
      } catch (const std::exception&) {
        if (!last) throw Error("decision log " + log_path_.string() + " has a corrupt line before the end");
        ++skipped_;
        torn_offset_ = start;
      }
    }
  }

  std::shared_ptr<const State> snapshot() const {
    std::lock_guard read(state_mutex_);
    return state_;
  }

  void publish(std::shared_ptr<const State> s) {
    std::lock_guard read(state_mutex_);
    state_ = std::move(s);
  }

  std::filesystem::path log_path_;
  std::ofstream log_;
  bool torn_tail_ = false;  // the log ends without a newline
  std::optional<std::uintmax_t> torn_offset_;
  std::size_t skipped_ = 0;
  std::mutex write_mutex_;          // serializes appends
  mutable std::mutex state_mutex_;  // guards only the pointer swap
  std::shared_ptr<const State> state_;
};

}  // namespace psylex
