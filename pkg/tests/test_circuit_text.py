"""
Tests for the text circuit format and report sinks.
"""
import io
import os
import sys
import tempfile
import unittest

# Add parent directory to sys.path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.circuit import BIND_TAG, GateKind, decompose_toffoli
from storage.circuit_text import export_text, parse_text
from storage.report_sink import FileSink, MemorySink, StreamSink, get_sink, set_sink
from synthesis.arithmetic import build_adder, build_const_adder
from utils.error_handler import CircuitError


class TestCircuitText(unittest.TestCase):
    """Test cases for export_text and parse_text."""

    def setUp(self):
        """Set up test fixtures."""
        self.adder = build_adder(2)

    def test_export_header_and_gates(self):
        """Test the header lines and gate syntax."""
        text = export_text(self.adder)
        lines = text.splitlines()
        self.assertEqual(lines[0], "// circuit: adder")
        self.assertEqual(lines[1], f"// qubits: {self.adder.num_qubits}")
        self.assertIn("// register x 0 2 input 0", lines)
        self.assertIn("cx q[0],q[2]", lines)
        self.assertEqual(sum(1 for line in lines if not line.startswith("//")), len(self.adder))

    def test_round_trip_keeps_metadata(self):
        """Test that layout, tags and bound bits survive a round trip."""
        circuit = build_const_adder(3, 5, controlled=True)
        parsed = parse_text(export_text(circuit))
        self.assertEqual(parsed, circuit)
        self.assertEqual(parsed.binding_cnot_count, 4)
        self.assertEqual(parsed.adjusted_cnot_count, circuit.adjusted_cnot_count)
        self.assertTrue(any(g.tag == BIND_TAG for g in parsed.gates))

    def test_round_trip_lowered_blocks(self):
        """Test that block ids on lowered gates are kept."""
        lowered = decompose_toffoli(self.adder)
        parsed = parse_text(export_text(lowered))
        self.assertEqual([g.block for g in parsed.gates], [g.block for g in lowered.gates])
        self.assertIn(GateKind.H, {g.kind for g in parsed.gates})

    def test_parse_without_header(self):
        """Test that the qubit count is inferred when absent."""
        parsed = parse_text("x q[0]\ncx q[0],q[3];\n")
        self.assertEqual(parsed.num_qubits, 4)
        self.assertEqual(len(parsed), 2)

    def test_parse_errors(self):
        """Test that unparsable lines raise CircuitError."""
        with self.assertRaises(CircuitError):
            parse_text("swap q[0],q[1]\n")
        with self.assertRaises(CircuitError):
            parse_text("cx q[0]\n")
        with self.assertRaises(CircuitError):
            parse_text("// register x 0 2\nx q[0]\n")


class TestReportSinks(unittest.TestCase):
    """Test cases for output sinks."""

    def tearDown(self):
        """Restore the default sink."""
        set_sink(None)

    def test_memory_sink_json(self):
        """Test JSON output is sorted and parseable."""
        sink = MemorySink()
        sink.write_json({"b": 1, "a": [2, 3]})
        self.assertEqual(sink.json(), {"a": [2, 3], "b": 1})
        self.assertLess(sink.text.index('"a"'), sink.text.index('"b"'))

    def test_stream_sink(self):
        """Test writing to an explicit stream."""
        stream = io.StringIO()
        StreamSink(stream).write_text("hello\n")
        self.assertEqual(stream.getvalue(), "hello\n")

    def test_file_sink_replaces_then_appends(self):
        """Test that the first write truncates and later writes append."""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "out", "report.json")
            sink = FileSink(path)
            sink.write_text("one\n")
            sink.write_text("two\n")
            with open(path) as handle:
                self.assertEqual(handle.read(), "one\ntwo\n")

    def test_default_sink(self):
        """Test get_sink and set_sink."""
        set_sink(None)
        self.assertIsInstance(get_sink(), StreamSink)
        memory = MemorySink()
        set_sink(memory)
        self.assertIs(get_sink(), memory)


if __name__ == '__main__':
    unittest.main()
