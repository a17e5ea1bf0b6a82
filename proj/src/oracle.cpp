#include "oideg/oracle.hpp"

namespace oideg {

OracleTable::OracleTable(const Sample& sample, BitString x)
    : sample_(&sample), x_(std::move(x)), m_(sample.base ? sample.base->m() : 0) {
    if (!sample_->base) throw std::invalid_argument("OracleTable: sample without base");
    if (x_.length() != sample_->base->n)
        throw std::invalid_argument("OracleTable: x length != n");
    bits_.assign((m_ + 63) / 64, 0);
    for (uint32_t j = 1; j <= m_; ++j)
        if (inner_product(sample_->string_at(j), x_))
            bits_[(j - 1) >> 6] |= 1ull << ((j - 1) & 63);
}

}  // namespace oideg
