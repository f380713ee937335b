#pragma once

#include "hopfcyc/scalar.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hopfcyc {

// A word is a sequence of generator indices (one char per letter).
using Word = std::string;
using WordTuple = std::vector<Word>;

struct Generator {
    std::string name;
    int degree = 1;
    // Index of the two-sided-inverse partner generator for Cartan (degree-0,
    // grouplike-torus) letters, -1 otherwise. The Cartan window constrains the
    // net exponent of each such pair in a normal word.
    int inverseOf = -1;
    // Degree-0 letters without an inverse partner (e.g. a primitive Cartan
    // generator) can be windowed instead: occurrence count capped by the window.
    bool windowed = false;
};

class AlgebraElement;

struct Rule {
    Word lhs;
    std::map<Word, Scalar> rhs;
};

// Finitely presented algebra with a rewriting system oriented along the
// degree-then-length-then-lex monomial order.
class Presentation {
public:
    Presentation(std::string name, Ring ring, std::vector<Generator> gens);

    const std::string& name() const { return name_; }
    const Ring& ring() const { return ring_; }
    const std::vector<Generator>& generators() const { return gens_; }
    int generatorIndex(const std::string& name) const; // -1 if absent
    int truncationDegree() const { return truncationDegree_; }
    void setTruncationDegree(int d) { truncationDegree_ = d; }
    int cartanWindow() const { return cartanWindow_; }
    void setCartanWindow(int w) { cartanWindow_ = w; }

    // Adds lhs -> rhs; validates that every rhs word is strictly smaller.
    void addRule(const Word& lhs, std::map<Word, Scalar> rhs);
    const std::vector<Rule>& rules() const { return rules_; }

    int degreeOf(const Word& w) const;
    // Monomial order: degree, then length, then lexicographic by index.
    int cmpWords(const Word& a, const Word& b) const;
    bool withinCartanWindow(const Word& w) const;

    AlgebraElement normalize(std::map<Word, Scalar> raw, bool rightmost = false) const;
    AlgebraElement unit() const;
    AlgebraElement gen(int i) const;
    AlgebraElement gen(const std::string& name) const;
    AlgebraElement wordElement(const Word& w) const;
    AlgebraElement zeroElement() const;

    std::vector<std::string> checkConfluence(int degreeBound) const;
    // All irreducible words of degree <= d within the Cartan window, in
    // monomial order. Throws DegreeOverflowError if enumeration blows up
    // (e.g. unconstrained degree-0 letters).
    std::vector<Word> basisUpTo(int d) const;

    std::string wordStr(const Word& w) const;

private:
    std::optional<std::pair<size_t, size_t>> findRedex(const Word& w, bool rightmost) const;

    std::string name_;
    Ring ring_;
    std::vector<Generator> gens_;
    std::vector<Rule> rules_;
    int truncationDegree_ = -1; // -1: no truncation
    int cartanWindow_ = 4;
};

// Finite linear combination of normal-form words.
class AlgebraElement {
public:
    AlgebraElement() = default;
    explicit AlgebraElement(const Presentation* alg) : alg_(alg) {}

    const Presentation* algebra() const { return alg_; }
    const std::map<Word, Scalar>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    Scalar coeff(const Word& w) const;
    int maxDegree() const;

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator-() const;
    AlgebraElement operator*(const AlgebraElement& o) const;
    AlgebraElement scaled(const Scalar& c) const;
    bool operator==(const AlgebraElement& o) const;

    std::string str() const;

    // Internal: inserts an (already normal) term.
    void addTermUnchecked(const Word& w, const Scalar& c);

private:
    const Presentation* alg_ = nullptr;
    std::map<Word, Scalar> terms_;
    friend class Presentation;
};

// Finite linear combination of pure tensors of normal words; fixed slot
// algebras per position.
class TensorElement {
public:
    TensorElement() = default;
    explicit TensorElement(std::vector<const Presentation*> slots) : slots_(std::move(slots)) {}
    static TensorElement tensorOf(const std::vector<AlgebraElement>& factors);

    size_t arity() const { return slots_.size(); }
    const std::vector<const Presentation*>& slots() const { return slots_; }
    const std::map<WordTuple, Scalar>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    Ring ring() const;

    TensorElement operator+(const TensorElement& o) const;
    TensorElement operator-(const TensorElement& o) const;
    TensorElement scaled(const Scalar& c) const;
    // Slotwise product (equal arity/slots).
    TensorElement operator*(const TensorElement& o) const;
    bool operator==(const TensorElement& o) const;

    // Replace slot i by the image of its word under f, renormalize.
    TensorElement mapSlot(size_t i, const std::function<AlgebraElement(const Word&)>& f) const;
    // Replace slot i (an element of slot algebra) by a tensor of elements,
    // splicing the result in place of the slot (used for coproducts).
    TensorElement spliceSlot(size_t i, const std::function<TensorElement(const Word&)>& f) const;
    // Drop slot i, scaling by a scalar-valued function of the word.
    TensorElement contractSlot(size_t i, const std::function<Scalar(const Word&)>& f) const;
    // Reorder slots by permutation: result slot j = old slot perm[j].
    TensorElement permuted(const std::vector<size_t>& perm) const;

    void addTerm(const WordTuple& words, const Scalar& c);
    std::string str() const;

private:
    void checkCompatible(const TensorElement& o) const;
    std::vector<const Presentation*> slots_;
    std::map<WordTuple, Scalar> terms_;
};

} // namespace hopfcyc
