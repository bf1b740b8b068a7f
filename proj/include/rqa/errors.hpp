#pragma once

#include <stdexcept>
#include <string>

namespace rqa {

// Base for all library errors. `code()` is a stable machine-readable
// identifier; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define RQA_DEFINE_ERROR(Name)                                  \
    class Name : public Error {                                 \
    public:                                                     \
        explicit Name(const std::string& message)               \
            : Error(#Name, message) {}                          \
    }

// corpus
RQA_DEFINE_ERROR(DuplicateRequirementId);
RQA_DEFINE_ERROR(MalformedHeader);
RQA_DEFINE_ERROR(SchemaError);

// lingo
RQA_DEFINE_ERROR(InvalidK);
RQA_DEFINE_ERROR(MixedShingleLength);
RQA_DEFINE_ERROR(EmptySet);

// taxonomy
RQA_DEFINE_ERROR(UnknownAttribute);
RQA_DEFINE_ERROR(DuplicateAttribute);
RQA_DEFINE_ERROR(SelfLoop);
RQA_DEFINE_ERROR(BadBallotSum);
RQA_DEFINE_ERROR(NoBallots);

// operators
RQA_DEFINE_ERROR(UnknownOperator);
RQA_DEFINE_ERROR(ConfigError);
RQA_DEFINE_ERROR(MissingDictionary);
RQA_DEFINE_ERROR(InvalidThreshold);

// evalharness
RQA_DEFINE_ERROR(NotClean);
RQA_DEFINE_ERROR(InsufficientSites);
RQA_DEFINE_ERROR(CorpusTooSmall);

#undef RQA_DEFINE_ERROR

}  // namespace rqa
