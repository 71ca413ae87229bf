#include "store.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bfly::cli {

  namespace fs = std::filesystem;

  namespace {
    class Lock {
     public:
      Lock(fs::path const& p, bool exclusive) {
        fd_ = ::open(p.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ >= 0) {
          ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH);
        }
      }
      ~Lock() {
        if (fd_ >= 0) {
          ::flock(fd_, LOCK_UN);
          ::close(fd_);
        }
      }
      Lock(Lock const&)            = delete;
      Lock& operator=(Lock const&) = delete;

     private:
      int fd_ = -1;
    };

    std::string slurp(fs::path const& p) {
      std::ifstream in(p, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    void write_atomically(fs::path const& p, std::string const& data) {
      auto tmp = p;
      tmp += ".tmp." + std::to_string(::getpid());
      {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << data;
        if (!out) {
          throw std::runtime_error("cannot write " + tmp.string());
        }
      }
      fs::rename(tmp, p);
    }

    bool is_hex(std::string const& s) {
      return !s.empty() && s.find_first_not_of("0123456789abcdef") == std::string::npos;
    }
  }  // namespace

  std::string sha256_hex(std::string const& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int  len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("SHA-256 failed");
    }
    static char const hex[] = "0123456789abcdef";
    std::string       out;
    for (unsigned i = 0; i < len; ++i) {
      out += hex[digest[i] >> 4];
      out += hex[digest[i] & 15];
    }
    return out;
  }

  Store::Store(fs::path root) : root_(std::move(root)) {
    fs::create_directories(root_ / "objects");
  }

  fs::path Store::default_root(std::string const& flag) {
    if (!flag.empty()) {
      return flag;
    }
    if (char const* env = std::getenv("BUTTERFLY_WORKSPACE"); env && *env) {
      return env;
    }
    return fs::current_path() / ".butterfly";
  }

  json Store::read_index() const {
    auto p = root_ / "index.json";
    if (!fs::exists(p)) {
      return json{{"objects", json::object()}, {"memo", json::object()}};
    }
    return parse_json(slurp(p));
  }

  void Store::write_index(json const& idx) {
    write_atomically(root_ / "index.json", idx.dump(1));
  }

  std::string Store::put(json const& j) {
    auto text = canonical_dump(j);
    auto hash = sha256_hex(text);
    Lock lock(root_ / "lock", true);
    auto obj = root_ / "objects" / (hash + ".json");
    if (!fs::exists(obj)) {
      write_atomically(obj, text);
    }
    auto idx = read_index();
    if (!idx["objects"].contains(hash)) {
      std::string kind;
      try {
        kind = kind_of(j);
      } catch (UnknownKind const&) {
        kind = j.is_array() ? "list" : "document";
      }
      idx["objects"][hash] = kind;
      write_index(idx);
    }
    return hash;
  }

  std::string Store::resolve(std::string const& ref) const {
    if (ref.size() < 6 || !is_hex(ref)) {
      throw ParseError("'" + ref + "' is not a store reference");
    }
    Lock lock(root_ / "lock", false);
    if (ref.size() == 64 && fs::exists(root_ / "objects" / (ref + ".json"))) {
      return ref;
    }
    std::string found;
    auto        idx = read_index();
    for (auto const& [hash, kind] : idx["objects"].items()) {
      if (hash.compare(0, ref.size(), ref) == 0) {
        if (!found.empty()) {
          throw ParseError("reference '" + ref + "' is ambiguous");
        }
        found = hash;
      }
    }
    if (found.empty()) {
      throw ParseError("no object '" + ref + "' in " + root_.string());
    }
    return found;
  }

  bool Store::has(std::string const& ref) const {
    try {
      resolve(ref);
      return true;
    } catch (ParseError const&) {
      return false;
    }
  }

  json Store::get(std::string const& ref) const {
    auto hash = resolve(ref);
    Lock lock(root_ / "lock", false);
    return parse_json(slurp(root_ / "objects" / (hash + ".json")));
  }

  std::vector<Store::Entry> Store::list() const {
    Lock               lock(root_ / "lock", false);
    std::vector<Entry> out;
    auto               idx = read_index();
    for (auto const& [hash, kind] : idx["objects"].items()) {
      out.push_back({hash, kind.get<std::string>()});
    }
    return out;
  }

  std::optional<std::string> Store::memo(std::string const& key) const {
    Lock lock(root_ / "lock", false);
    auto idx = read_index();
    if (idx["memo"].contains(key)) {
      auto h = idx["memo"][key].get<std::string>();
      if (fs::exists(root_ / "objects" / (h + ".json"))) {
        return h;
      }
    }
    return std::nullopt;
  }

  void Store::set_memo(std::string const& key, std::string const& hash) {
    Lock lock(root_ / "lock", true);
    auto idx         = read_index();
    idx["memo"][key] = hash;
    write_index(idx);
  }

}  // namespace bfly::cli
