# .presets
