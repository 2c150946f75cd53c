#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ptrans {

// Expressions are locals (%x), globals (@x), integer constants, or
// metavariables. Metavariables only appear in pattern positions; an
// executable graph is fully ground.
struct Expr {
    enum class Kind { Local, Global, Const, Var };
    Kind kind = Kind::Const;
    std::string name;       // Local/Global/Var
    std::int64_t value = 0; // Const

    static Expr local(std::string n) { return {Kind::Local, std::move(n), 0}; }
    static Expr global(std::string n) { return {Kind::Global, std::move(n), 0}; }
    static Expr constant(std::int64_t v) { return {Kind::Const, {}, v}; }
    static Expr var(std::string n) { return {Kind::Var, std::move(n), 0}; }

    bool is_var() const { return kind == Kind::Var; }
    auto operator<=>(const Expr&) const = default;
};

// A type is a base (int, or a type metavariable) with some number of
// pointer stars. "int**" is {stars=2}; the pattern "TY*" is a pointer
// to whatever TY matches.
struct Type {
    bool is_var = false;
    std::string var;
    int stars = 0;

    static Type int_ty(int stars = 0) { return {false, {}, stars}; }
    static Type var_ty(std::string n, int stars = 0) { return {true, std::move(n), stars}; }

    Type pointer_to() const { return {is_var, var, stars + 1}; }
    auto operator<=>(const Type&) const = default;
};

enum class ArithOp { Add, Sub, Mul };
enum class CmpOp { Eq, Ne, Slt, Sgt, Sle, Sge };

struct Arith {
    Expr dst;
    ArithOp op;
    Type ty;
    Expr lhs, rhs;
    auto operator<=>(const Arith&) const = default;
};
struct Icmp {
    Expr dst;
    CmpOp cmp;
    Type ty;
    Expr lhs, rhs;
    auto operator<=>(const Icmp&) const = default;
};
struct BrCond {
    Expr cond;
    auto operator<=>(const BrCond&) const = default;
};
struct Br {
    auto operator<=>(const Br&) const = default;
};
struct Call {
    Expr dst;
    Type ty;
    std::vector<Expr> args;
    auto operator<=>(const Call&) const = default;
};
struct Return {
    Expr value;
    auto operator<=>(const Return&) const = default;
};
struct Alloca {
    Expr dst;
    Type ty;
    auto operator<=>(const Alloca&) const = default;
};
struct Load {
    Expr dst;
    Type ptr_ty; // the pointer type as written, stars included
    Expr addr;
    auto operator<=>(const Load&) const = default;
};
struct Store {
    Type val_ty;
    Expr value;
    Type ptr_ty;
    Expr addr;
    auto operator<=>(const Store&) const = default;
};
struct IsPointer {
    Expr value;
    auto operator<=>(const IsPointer&) const = default;
};

using Instruction =
    std::variant<Arith, Icmp, BrCond, Br, Call, Return, Alloca, Load, Store, IsPointer>;

inline const char* to_string(ArithOp op) {
    switch (op) {
    case ArithOp::Add: return "add";
    case ArithOp::Sub: return "sub";
    case ArithOp::Mul: return "mul";
    }
    return "?";
}

inline const char* to_string(CmpOp c) {
    switch (c) {
    case CmpOp::Eq: return "eq";
    case CmpOp::Ne: return "ne";
    case CmpOp::Slt: return "slt";
    case CmpOp::Sgt: return "sgt";
    case CmpOp::Sle: return "sle";
    case CmpOp::Sge: return "sge";
    }
    return "?";
}

inline std::string to_string(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Local: return "%" + e.name;
    case Expr::Kind::Global: return "@" + e.name;
    case Expr::Kind::Const: return std::to_string(e.value);
    case Expr::Kind::Var: return e.name;
    }
    return "?";
}

inline std::string to_string(const Type& t) {
    std::string s = t.is_var ? t.var : "int";
    s.append(static_cast<size_t>(t.stars), '*');
    return s;
}

inline std::string to_string(const Instruction& ins) {
    struct Printer {
        std::string operator()(const Arith& i) const {
            return to_string(i.dst) + " = " + to_string(i.op) + " " + to_string(i.ty) + " " +
                   to_string(i.lhs) + ", " + to_string(i.rhs);
        }
        std::string operator()(const Icmp& i) const {
            return to_string(i.dst) + " = icmp " + to_string(i.cmp) + " " + to_string(i.ty) +
                   " " + to_string(i.lhs) + ", " + to_string(i.rhs);
        }
        std::string operator()(const BrCond& i) const { return "br i1 " + to_string(i.cond); }
        std::string operator()(const Br&) const { return "br"; }
        std::string operator()(const Call& i) const {
            std::string s = to_string(i.dst) + " = call " + to_string(i.ty) + " (";
            for (size_t k = 0; k < i.args.size(); ++k) {
                if (k) s += ", ";
                s += to_string(i.args[k]);
            }
            return s + ")";
        }
        std::string operator()(const Return& i) const { return "return " + to_string(i.value); }
        std::string operator()(const Alloca& i) const {
            return to_string(i.dst) + " = alloca " + to_string(i.ty);
        }
        std::string operator()(const Load& i) const {
            return to_string(i.dst) + " = load " + to_string(i.ptr_ty) + " " + to_string(i.addr);
        }
        std::string operator()(const Store& i) const {
            return "store " + to_string(i.val_ty) + " " + to_string(i.value) + ", " +
                   to_string(i.ptr_ty) + " " + to_string(i.addr);
        }
        std::string operator()(const IsPointer& i) const {
            return "is_pointer " + to_string(i.value);
        }
    };
    return std::visit(Printer{}, ins);
}

// Destination variable written by an instruction, if any.
inline std::optional<Expr> dst_of(const Instruction& ins) {
    struct V {
        std::optional<Expr> operator()(const Arith& i) const { return i.dst; }
        std::optional<Expr> operator()(const Icmp& i) const { return i.dst; }
        std::optional<Expr> operator()(const Call& i) const { return i.dst; }
        std::optional<Expr> operator()(const Alloca& i) const { return i.dst; }
        std::optional<Expr> operator()(const Load& i) const { return i.dst; }
        template <class T> std::optional<Expr> operator()(const T&) const { return std::nullopt; }
    };
    return std::visit(V{}, ins);
}

inline void for_each_expr(const Instruction& ins, const std::function<void(const Expr&)>& f) {
    struct V {
        const std::function<void(const Expr&)>& f;
        void operator()(const Arith& i) const { f(i.dst); f(i.lhs); f(i.rhs); }
        void operator()(const Icmp& i) const { f(i.dst); f(i.lhs); f(i.rhs); }
        void operator()(const BrCond& i) const { f(i.cond); }
        void operator()(const Br&) const {}
        void operator()(const Call& i) const {
            f(i.dst);
            for (const auto& a : i.args) f(a);
        }
        void operator()(const Return& i) const { f(i.value); }
        void operator()(const Alloca& i) const { f(i.dst); }
        void operator()(const Load& i) const { f(i.dst); f(i.addr); }
        void operator()(const Store& i) const { f(i.value); f(i.addr); }
        void operator()(const IsPointer& i) const { f(i.value); }
    };
    std::visit(V{f}, ins);
}

inline void for_each_type(const Instruction& ins, const std::function<void(const Type&)>& f) {
    struct V {
        const std::function<void(const Type&)>& f;
        void operator()(const Arith& i) const { f(i.ty); }
        void operator()(const Icmp& i) const { f(i.ty); }
        void operator()(const BrCond&) const {}
        void operator()(const Br&) const {}
        void operator()(const Call& i) const { f(i.ty); }
        void operator()(const Return&) const {}
        void operator()(const Alloca& i) const { f(i.ty); }
        void operator()(const Load& i) const { f(i.ptr_ty); }
        void operator()(const Store& i) const { f(i.val_ty); f(i.ptr_ty); }
        void operator()(const IsPointer&) const {}
    };
    std::visit(V{f}, ins);
}

inline bool is_ground(const Expr& e) { return !e.is_var(); }
inline bool is_ground(const Type& t) { return !t.is_var; }

inline bool is_ground(const Instruction& ins) {
    bool ok = true;
    for_each_expr(ins, [&](const Expr& e) { ok = ok && is_ground(e); });
    for_each_type(ins, [&](const Type& t) { ok = ok && is_ground(t); });
    return ok;
}

} // namespace ptrans
