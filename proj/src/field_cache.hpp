#ifndef UNIVINT_FIELD_CACHE_HPP
#define UNIVINT_FIELD_CACHE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "univint/field.hpp"
#include "univint/place.hpp"

namespace univint {

/* Write-once memo tables shared by copies of one FieldCtx. Entries are
 * never modified after insertion, so references handed out stay valid. */
struct FieldCache {
    std::mutex mu;
    std::map<std::int64_t, std::vector<Place>> places;
    // per-place local data (square tables, square-class bases), keyed by a text tag
    std::map<std::string, std::shared_ptr<void const>> local;
    std::shared_ptr<void const> class_group;
};

}  // namespace univint

#endif
