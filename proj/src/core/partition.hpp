#ifndef UACSP_PARTITION_HPP
#define UACSP_PARTITION_HPP

#include <string>
#include <vector>

namespace uacsp {

using Element = int;

/** Partition of {0..n-1} in canonical labeling: rep[e] is the least element
 *  of the block containing e. Equality of partitions is plain vector equality. */
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<Element> reps);

    static Partition equality(int n);
    static Partition full(int n);
    /** Least partition whose blocks contain all given pairs (transitive closure). */
    static Partition from_pairs(int n, const std::vector<std::pair<Element, Element>>& pairs);

    int size() const { return static_cast<int>(rep_.size()); }
    Element rep(Element e) const { return rep_[e]; }
    bool same(Element a, Element b) const { return rep_[a] == rep_[b]; }
    bool is_equality() const;
    bool is_full() const;
    int block_count() const;

    /** Blocks sorted by least member; elements within a block ascending. */
    std::vector<std::vector<Element>> blocks() const;
    /** Index of e's block in the blocks() ordering. */
    int block_index(Element e) const;

    Partition meet(const Partition& other) const;
    Partition join(const Partition& other) const;
    /** true iff every block of this is contained in a block of other. */
    bool refines(const Partition& other) const;

    /** Sorted block list, e.g. "{{0,1},{2}}". */
    std::string to_string() const;

    bool operator==(const Partition& other) const { return rep_ == other.rep_; }
    bool operator!=(const Partition& other) const { return rep_ != other.rep_; }
    bool operator<(const Partition& other) const { return rep_ < other.rep_; }

private:
    std::vector<Element> rep_;
    void canonicalize();
};

} // namespace uacsp

#endif
