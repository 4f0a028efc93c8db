#pragma once

#include <compare>
#include <cstdint>
#include <deque>
#include <memory>
#include <string>

namespace cartan {

class Session;

/// A named indeterminate. Identity and ordering come from the creation index
/// assigned by the owning Session; the name is for printing only.
class Symbol {
 public:
  std::uint32_t id() const { return id_; }
  const std::string& name() const { return *name_; }

  friend bool operator==(const Symbol& a, const Symbol& b) { return a.id_ == b.id_; }
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) { return a.id_ <=> b.id_; }

 private:
  friend class Session;
  Symbol(std::uint32_t id, const std::string* name) : id_(id), name_(name) {}

  std::uint32_t id_;
  const std::string* name_;
};

/// Owns the symbol registry. Every object built from a session's symbols must
/// not outlive it. A session may be moved between threads but is never shared.
class Session {
 public:
  Session() : names_(std::make_unique<std::deque<std::string>>()) {}
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;
  Session(Session&&) noexcept = default;
  Session& operator=(Session&&) noexcept = default;

  /// A fresh symbol; names need not be unique.
  Symbol symbol(std::string name) {
    names_->push_back(std::move(name));
    return Symbol(static_cast<std::uint32_t>(names_->size() - 1), &names_->back());
  }

  std::size_t symbol_count() const { return names_->size(); }

 private:
  // deque keeps element addresses stable on push_back; the unique_ptr keeps them
  // stable when the session itself is moved.
  std::unique_ptr<std::deque<std::string>> names_;
};

}  // namespace cartan
