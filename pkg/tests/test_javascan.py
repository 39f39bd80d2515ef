from __future__ import annotations

import logging

from bitrace.javascan import clean_comment, scan_java_sources, scan_java_text, tokenize_java


def _one(src: str):
    (facts,) = scan_java_text(src)
    return facts


def test_email_util_fixture(mini):
    facts = {f.id: f for f in scan_java_sources(mini / "src")}
    util = facts["edu.ncsu.csc.itrust.EmailUtil"]
    assert util.class_names == ("EmailUtil",)
    assert util.method_names == ("sendEmail",)  # constructor excluded
    assert util.invoked_method_names == ("getFakeEmailDAO", "sendEmailRecord")
    assert util.field_decls == ("DAOFactory", "factory")
    assert util.param_decls == ("DAOFactory", "factory", "Email", "email")
    assert util.comments == ("Utility class to send an email.",)
    assert len(facts) == 6


def test_tokenizer_keeps_comments_and_strings():
    kinds = [(t.kind, t.text) for t in tokenize_java('a("x(y)"); // c\n/* d */ b')]
    assert kinds == [
        ("ident", "a"), ("op", "("), ("str", '"x(y)"'), ("op", ")"), ("op", ";"),
        ("comment", "// c"), ("comment", "/* d */"), ("ident", "b"),
    ]


def test_clean_comment():
    assert clean_comment("/**\n * Sends the {@link Email}.\n * <p>Twice.</p>\n * @param e the email\n */") == (
        "Sends the Email. Twice. e the email"
    )
    assert clean_comment("// trailing note") == "trailing note"


def test_annotations_generics_and_calls():
    f = _one(
        """
        /** Outer doc. */
        @Entity
        public class Outer<T extends Comparable<T>> extends Base implements Runnable {
            private Map<String, List<T>> cache = new HashMap<>();
            @Override public void run() {
                for (int i = 0; i < max(); i++) { process(i); }
                String s = "call(fake)";
            }
            <R> R convert(Function<T, R> fn) throws IOException { return fn.apply(null); }
        }
        """
    )
    assert f.class_names == ("Outer",)
    assert f.method_names == ("run", "convert")
    assert f.invoked_method_names == ("max", "process", "apply")
    assert f.field_decls == ("Map", "String", "List", "T", "cache")
    assert f.param_decls == ("Function", "T", "R", "fn")
    assert f.comments == ("Outer doc.",)


def test_nested_and_anonymous_classes_fold_into_top_level():
    f = _one(
        """
        package p;
        class Outer {
            static class Inner { void innerMethod(int x) { compute(x); } }
            void run() { Runnable r = new Runnable() { public void run() { helper.doWork(); } }; }
        }
        """
    )
    assert f.id == "p.Outer"
    assert f.class_names == ("Outer", "Inner")
    assert f.method_names == ("innerMethod", "run", "run")
    assert f.invoked_method_names == ("compute", "doWork")
    assert f.param_decls == ("x",)


def test_interface_enum_record():
    iface, enum, record = scan_java_text(
        """
        interface Shape { double area(); default String describe() { return name(); } }
        enum Color { RED, GREEN("g"); Color() {} String code() { return toString(); } }
        record Point(int x, int y) { Point { check(x); } }
        """
    )
    assert iface.method_names == ("area", "describe") and iface.invoked_method_names == ("name",)
    assert enum.method_names == ("code",)
    assert record.field_decls == ("x", "y") and record.invoked_method_names == ("check",)


def test_multiple_declarators_and_primitives():
    f = _one("class A { private static final int MAX_COUNT = 10, minCount; long id = nextId(); }")
    assert f.field_decls == ("MAX_COUNT", "minCount", "id")
    assert f.invoked_method_names == ("nextId",)


def test_body_comments_are_dropped():
    f = _one("class A { /** Doc. */ void a() { // inner\n b(); } /* field */ int c; }")
    assert f.comments == ("Doc.",)


def test_broken_source_does_not_raise():
    assert scan_java_text("class { void ( {") is not None
    assert scan_java_text("") == []


def test_directory_scan_warnings(tmp_path, caplog):
    (tmp_path / "a").mkdir()
    (tmp_path / "a" / "A.java").write_text("class A {}")
    (tmp_path / "B.java").write_text("class A {}")
    with caplog.at_level(logging.WARNING):
        facts = scan_java_sources(tmp_path)
    assert [f.id for f in facts] == ["A"]
    assert "duplicate class A" in caplog.text
    caplog.clear()
    with caplog.at_level(logging.WARNING):
        assert scan_java_sources(tmp_path / "a" / "none") == []
    assert "no Java classes" in caplog.text
