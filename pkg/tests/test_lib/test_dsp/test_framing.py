from unittest import TestCase

import numpy as np

from wge.exceptions import SignalError
from wge.lib.dsp import Waveform, FrameSet, frame_signal, overlap_add, frame_count


class TestFrameSignal(TestCase):

    def test_counts(self):
        self.assertEqual(frame_signal(np.ones(16384)).n_frames, 1)
        self.assertEqual(frame_signal(np.ones(24576)).n_frames, 2)
        self.assertEqual(frame_count(100, 16384), 1)
        frames = frame_signal(np.ones(16385))
        self.assertEqual((frames.n_frames, frames.hop), (2, 8192))
        self.assertEqual(float(frames.frames[1].sum()), 8193.0)

    def test_layout(self):
        frames = frame_signal(np.arange(1.0, 11.0), frame_length=4)
        self.assertEqual(frames.n_frames, 4)
        np.testing.assert_array_equal(frames.frames[1], [3., 4., 5., 6.])
        np.testing.assert_array_equal(frames.frames[3], [7., 8., 9., 10.])
        self.assertEqual(frames.original_length, 10)

    def test_invalid(self):
        with self.assertRaises(SignalError):
            frame_signal(np.array([]))
        with self.assertRaises(SignalError):
            frame_signal(np.ones(10), frame_length=5)
        with self.assertRaises(SignalError):
            FrameSet(np.zeros((3, 4)), 2, 4)
        with self.assertRaises(SignalError):
            FrameSet(np.zeros((1, 4)), 1, 4)


class TestOverlapAdd(TestCase):

    def test_round_trip(self):
        rng = np.random.default_rng(0)
        for length in (1, 7, 16, 33, 1000):
            x = rng.standard_normal(length)
            y = overlap_add(frame_signal(x, frame_length=16))
            self.assertIsInstance(y, Waveform)
            self.assertLessEqual(float(np.max(np.abs(y.samples - x))), 1e-9)

    def test_overlap_divided_by_two(self):
        frames = frame_signal(np.zeros(8), frame_length=4)
        y = overlap_add(frames.with_frames(np.ones((3, 4))))
        np.testing.assert_array_equal(y.samples, np.ones(8))

    def test_with_frames_shape(self):
        frames = frame_signal(np.zeros(8), frame_length=4)
        with self.assertRaises(SignalError):
            frames.with_frames(np.ones((2, 4)))

    def test_rejects_other_types(self):
        with self.assertRaises(SignalError):
            overlap_add(np.ones((2, 4)))
