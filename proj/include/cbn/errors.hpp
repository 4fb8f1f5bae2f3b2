#pragma once

#include <stdexcept>
#include <string>

namespace cbn {

/// Broad failure class; the CLI maps it to a process exit code.
enum class ErrorCategory { data = 2, model = 3, cap = 4, usage = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

#define CBN_DEFINE_ERROR(Name, Category)                                      \
  class Name : public Error {                                                 \
   public:                                                                    \
    explicit Name(const std::string& what) : Error(ErrorCategory::Category, #Name ": " + what) {} \
  }

CBN_DEFINE_ERROR(ParseError, data);
CBN_DEFINE_ERROR(InconsistentWidth, data);
CBN_DEFINE_ERROR(EmptyData, data);
CBN_DEFINE_ERROR(IncompatibleData, data);
CBN_DEFINE_ERROR(IndexError, usage);
CBN_DEFINE_ERROR(DimensionMismatch, usage);
CBN_DEFINE_ERROR(DomainError, usage);
CBN_DEFINE_ERROR(NotIdealError, usage);
CBN_DEFINE_ERROR(ZeroPolynomial, usage);
CBN_DEFINE_ERROR(CycleError, model);
CBN_DEFINE_ERROR(DegenerateMixture, model);
CBN_DEFINE_ERROR(CallerMustMerge, model);
CBN_DEFINE_ERROR(NotNested, model);
CBN_DEFINE_ERROR(CapExceeded, cap);

#undef CBN_DEFINE_ERROR

}  // namespace cbn
