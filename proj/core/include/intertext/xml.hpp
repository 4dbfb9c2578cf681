#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace intertext::xml {

struct Attribute {
    std::string name;
    std::string value;  // entity-decoded
};

// Receives events in document order. Text is entity-decoded and may arrive in
// several chunks per element.
class Handler {
public:
    virtual ~Handler() = default;
    virtual void start_element(std::string_view name, const std::vector<Attribute>& attrs) = 0;
    virtual void end_element(std::string_view name) = 0;
    virtual void text(std::string_view content) = 0;
};

// Non-validating parser for the element/attribute/text subset used by Zefania
// documents. Handles the XML declaration, comments, processing instructions,
// DOCTYPE, CDATA and the predefined + numeric character entities. Malformed
// input raises a parse error carrying "line:column".
void parse(std::string_view document, Handler& handler);

}  // namespace intertext::xml
