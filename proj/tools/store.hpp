#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "butterfly/io.hpp"

namespace bfly::cli {

  // Content-addressed object store:
  //   <root>/objects/<sha256>.json   canonical serialization
  //   <root>/index.json              {"objects": {hash: kind}, "memo": {key: hash}}
  //   <root>/lock                    advisory lock; exclusive for writers
  class Store {
   public:
    explicit Store(std::filesystem::path root);

    // --workspace, else $BUTTERFLY_WORKSPACE, else ./.butterfly
    static std::filesystem::path default_root(std::string const& flag);

    std::string put(json const& j);
    // Full hash or a unique prefix of at least 6 hex digits. Throws ParseError.
    json        get(std::string const& ref) const;
    bool        has(std::string const& ref) const;
    std::string resolve(std::string const& ref) const;

    struct Entry {
      std::string hash;
      std::string kind;
    };
    std::vector<Entry> list() const;

    std::optional<std::string> memo(std::string const& key) const;
    void                       set_memo(std::string const& key, std::string const& hash);

    std::filesystem::path const& root() const {
      return root_;
    }

   private:
    json read_index() const;
    void write_index(json const& idx);

    std::filesystem::path root_;
  };

  std::string sha256_hex(std::string const& data);

}  // namespace bfly::cli
