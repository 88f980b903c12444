#pragma once

#include <stdexcept>
#include <string>

namespace shorsat {

enum class Errc {
    // formula / DIMACS
    MalformedHeader,
    MalformedClause,
    ClauseCountMismatch,
    VariableOutOfRange,
    WidthExceeded,
    EmptyFormula,
    LengthMismatch,
    // reductions
    InvalidInstance,
    CertificateInvalid,
    WidthTooSmall,
    NotInS,
    // backends
    BudgetExceeded,
    AttemptsExhausted,
    NotComposite,
    InvalidArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace shorsat
