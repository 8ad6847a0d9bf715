#ifndef TWOEDGE_ERRORS_HPP
#define TWOEDGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twoedge {

/** \brief Base of every error raised by the library. */
class Error : public std::runtime_error {
public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

#define TWOEDGE_DEFINE_ERROR(Name)                                             \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &what) : Error(#Name ": " + what) {}       \
  };

TWOEDGE_DEFINE_ERROR(InvalidGraph)
TWOEDGE_DEFINE_ERROR(NonUnitary)
TWOEDGE_DEFINE_ERROR(NotScaleFree)
TWOEDGE_DEFINE_ERROR(ScanIncomplete)
TWOEDGE_DEFINE_ERROR(EmptyKernel)
TWOEDGE_DEFINE_ERROR(OutOfDomain)
TWOEDGE_DEFINE_ERROR(DegenerateSplit)
TWOEDGE_DEFINE_ERROR(OffBranch)
TWOEDGE_DEFINE_ERROR(SingularPoint)
TWOEDGE_DEFINE_ERROR(EmptySeries)
TWOEDGE_DEFINE_ERROR(ScanTooShort)
TWOEDGE_DEFINE_ERROR(SingularTorusPoint)

#undef TWOEDGE_DEFINE_ERROR

/** \brief Malformed configuration text; carries the offending line and field. */
class ParseError : public Error {
public:
  ParseError(const std::string &what, int line, std::string field)
      : Error("ParseError: " + what + (line > 0 ? " (line " + std::to_string(line) + ")" : "") +
              (field.empty() ? "" : " [" + field + "]")),
        line_(line), field_(std::move(field)) {}
  int line() const { return line_; }
  const std::string &field() const { return field_; }

private:
  int line_;
  std::string field_;
};

/** \brief Well-formed configuration that violates an invariant; field() names it. */
class ValidationError : public Error {
public:
  explicit ValidationError(std::string field, const std::string &detail = "")
      : Error("ValidationError(" + field + ")" + (detail.empty() ? "" : ": " + detail)),
        field_(std::move(field)) {}
  const std::string &field() const { return field_; }

private:
  std::string field_;
};

} // namespace twoedge

#endif // TWOEDGE_ERRORS_HPP
