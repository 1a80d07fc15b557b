#pragma once

#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "session.hpp"

namespace supdeg {

class UnknownSession : public Error {
 public:
  explicit UnknownSession(const std::string& id) : Error("no session '" + id + "'") {}
};

/// In-memory sessions. Reads of one session run concurrently; writes to a
/// session are serialized. Different sessions never block each other beyond
/// the brief map lookup.
class SessionStore {
 public:
  SessionStore() : rng_(std::random_device{}()) {}

  /// Builds a session under a fresh id and stores it.
  std::string create(const std::function<Session(std::string)>& make) {
    std::string id = fresh_id();
    auto entry = std::make_shared<Entry>(make(id));
    std::unique_lock lock(map_mutex_);
    entries_.emplace(entry->session.id(), entry);
    return entry->session.id();
  }

  template <typename F>
  auto read(const std::string& id, F&& f) const {
    auto entry = find(id);
    std::shared_lock lock(entry->mutex);
    return f(static_cast<const Session&>(entry->session));
  }

  template <typename F>
  auto write(const std::string& id, F&& f) {
    auto entry = find(id);
    std::unique_lock lock(entry->mutex);
    return f(entry->session);
  }

  bool contains(const std::string& id) const {
    std::shared_lock lock(map_mutex_);
    return entries_.count(id) != 0;
  }

  std::vector<std::string> ids() const {
    std::shared_lock lock(map_mutex_);
    std::vector<std::string> out;
    for (const auto& [id, entry] : entries_) out.push_back(id);
    return out;
  }

 private:
  struct Entry {
    explicit Entry(Session s) : session(std::move(s)) {}
    mutable std::shared_mutex mutex;
    Session session;
  };

  std::shared_ptr<Entry> find(const std::string& id) const {
    std::shared_lock lock(map_mutex_);
    auto it = entries_.find(id);
    if (it == entries_.end()) throw UnknownSession(id);
    return it->second;
  }

  std::string fresh_id() {
    std::lock_guard lock(rng_mutex_);
    while (true) {
      char buf[17];
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng_()));
      if (!contains(buf)) return buf;
    }
  }

  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> entries_;
  std::mutex rng_mutex_;
  std::mt19937_64 rng_;
};

}  // namespace supdeg
