#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bfly {

  // Every domain failure carries a short machine-readable kind.
  class Error : public std::runtime_error {
   public:
    Error(std::string kind, std::string const& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    std::string const& kind() const noexcept {
      return kind_;
    }

   private:
    std::string kind_;
  };

#define BFLY_ERROR(Name)                                        \
  struct Name : Error {                                         \
    explicit Name(std::string const& msg) : Error(#Name, msg) {} \
  }

  BFLY_ERROR(NotAGroup);
  BFLY_ERROR(NotAHom);
  BFLY_ERROR(NotNormal);
  BFLY_ERROR(CodomainMismatch);
  BFLY_ERROR(BoundExceeded);
  BFLY_ERROR(NotComposable);
  BFLY_ERROR(NotFlippable);
  BFLY_ERROR(NotASection);
  BFLY_ERROR(SectionInvalid);
  BFLY_ERROR(CooperatorFails);
  BFLY_ERROR(FractorConditionFailed);
  BFLY_ERROR(ShapeMismatch);
  BFLY_ERROR(GroupLawSearchFailed);
  BFLY_ERROR(UnknownSuite);
  BFLY_ERROR(ParseError);
  BFLY_ERROR(UnknownKind);
  BFLY_ERROR(InvalidConstruction);

#undef BFLY_ERROR

  // Diagnostics, as opposed to exceptions: one entry per violated instance.
  struct Issue {
    std::string condition;
    std::string witness;
  };

  struct Report {
    std::vector<Issue> issues;

    bool ok() const noexcept {
      return issues.empty();
    }
    void add(std::string condition, std::string witness) {
      issues.push_back({std::move(condition), std::move(witness)});
    }
    bool has(std::string const& condition) const {
      for (auto const& i : issues) {
        if (i.condition == condition) {
          return true;
        }
      }
      return false;
    }
    void merge(Report const& other, std::string const& prefix = "") {
      for (auto const& i : other.issues) {
        issues.push_back({prefix + i.condition, i.witness});
      }
    }
    std::string str() const;
  };

}  // namespace bfly
