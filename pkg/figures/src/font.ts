// Bitmap font table rasterized from a fixed 8px bitmap face.
// Each glyph: advance width in pixels plus one bitmask per row,
// bit i set = pixel at x offset i. Rows share a common baseline.

export const FONT_HEIGHT = 12;

export interface Glyph {
  w: number;
  rows: number[];
}

export const GLYPHS: { [code: number]: Glyph } = {
  32: { w: 2, rows: [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0] }, //  
  33: { w: 3, rows: [0, 0, 2, 2, 2, 2, 2, 0, 0, 2, 0, 0] }, // !
  34: { w: 4, rows: [0, 0, 6, 6, 6, 0, 0, 0, 0, 0, 0, 0] }, // "
  35: { w: 6, rows: [0, 0, 20, 12, 12, 30, 10, 30, 10, 6, 0, 0] }, // #
  36: { w: 7, rows: [0, 8, 28, 42, 42, 14, 24, 40, 42, 28, 8, 0] }, // $
  37: { w: 9, rows: [0, 0, 78, 42, 42, 30, 240, 168, 164, 228, 0, 0] }, // %
  38: { w: 7, rows: [0, 0, 28, 2, 34, 124, 34, 34, 34, 60, 0, 0] }, // &
  39: { w: 3, rows: [0, 0, 2, 2, 2, 0, 0, 0, 0, 0, 0, 0] }, // '
  40: { w: 4, rows: [0, 0, 4, 2, 2, 2, 2, 2, 2, 4, 4, 0] }, // (
  41: { w: 3, rows: [0, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0] }, // )
  42: { w: 7, rows: [0, 0, 0, 0, 0, 8, 42, 28, 20, 0, 0, 0] }, // *
  43: { w: 7, rows: [0, 0, 0, 0, 8, 8, 62, 8, 8, 0, 0, 0] }, // +
  44: { w: 2, rows: [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0] }, // ,
  45: { w: 3, rows: [0, 0, 0, 0, 0, 0, 3, 0, 0, 0, 0, 0] }, // -
  46: { w: 3, rows: [0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0] }, // .
  47: { w: 3, rows: [0, 0, 2, 2, 1, 1, 1, 0, 0, 0, 0, 0] }, // /
  48: { w: 6, rows: [0, 0, 28, 54, 34, 34, 34, 34, 54, 28, 0, 0] }, // 0
  49: { w: 6, rows: [0, 0, 12, 10, 8, 8, 8, 8, 8, 8, 0, 0] }, // 1
  50: { w: 6, rows: [0, 0, 12, 18, 16, 16, 8, 4, 2, 31, 0, 0] }, // 2
  51: { w: 6, rows: [0, 0, 14, 17, 16, 12, 16, 17, 17, 14, 0, 0] }, // 3
  52: { w: 6, rows: [0, 0, 16, 24, 20, 20, 18, 63, 16, 16, 0, 0] }, // 4
  53: { w: 6, rows: [0, 0, 30, 1, 1, 13, 19, 16, 17, 14, 0, 0] }, // 5
  54: { w: 6, rows: [0, 0, 28, 36, 34, 30, 34, 34, 34, 28, 0, 0] }, // 6
  55: { w: 6, rows: [0, 0, 31, 16, 8, 8, 4, 4, 2, 2, 0, 0] }, // 7
  56: { w: 6, rows: [0, 0, 28, 34, 34, 28, 34, 34, 34, 28, 0, 0] }, // 8
  57: { w: 6, rows: [0, 0, 28, 34, 34, 34, 60, 34, 18, 28, 0, 0] }, // 9
  58: { w: 3, rows: [0, 0, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0] }, // :
  59: { w: 3, rows: [0, 0, 0, 0, 2, 0, 0, 0, 0, 2, 1, 0] }, // ;
  60: { w: 6, rows: [0, 0, 0, 0, 0, 24, 6, 2, 12, 16, 0, 0] }, // <
  61: { w: 6, rows: [0, 0, 0, 0, 0, 30, 0, 30, 0, 0, 0, 0] }, // =
  62: { w: 6, rows: [0, 0, 0, 0, 0, 6, 24, 16, 12, 2, 0, 0] }, // >
  63: { w: 6, rows: [0, 0, 12, 18, 18, 16, 8, 8, 0, 8, 0, 0] }, // ?
  64: { w: 10, rows: [0, 0, 112, 140, 372, 330, 330, 298, 218, 4, 120, 0] }, // @
  65: { w: 6, rows: [0, 0, 8, 12, 20, 18, 30, 34, 34, 33, 0, 0] }, // A
  66: { w: 7, rows: [0, 0, 30, 34, 34, 18, 62, 34, 34, 30, 0, 0] }, // B
  67: { w: 8, rows: [0, 0, 56, 68, 66, 2, 2, 66, 68, 60, 0, 0] }, // C
  68: { w: 8, rows: [0, 0, 30, 34, 66, 66, 66, 66, 34, 30, 0, 0] }, // D
  69: { w: 6, rows: [0, 0, 62, 2, 2, 2, 30, 2, 2, 62, 0, 0] }, // E
  70: { w: 6, rows: [0, 0, 62, 2, 2, 2, 30, 2, 2, 2, 0, 0] }, // F
  71: { w: 8, rows: [0, 0, 56, 100, 66, 2, 114, 66, 100, 92, 0, 0] }, // G
  72: { w: 8, rows: [0, 0, 66, 66, 66, 66, 126, 66, 66, 66, 0, 0] }, // H
  73: { w: 3, rows: [0, 0, 2, 2, 2, 2, 2, 2, 2, 2, 0, 0] }, // I
  74: { w: 6, rows: [0, 0, 16, 16, 16, 16, 16, 18, 18, 12, 0, 0] }, // J
  75: { w: 6, rows: [0, 0, 34, 18, 10, 10, 14, 10, 18, 34, 0, 0] }, // K
  76: { w: 6, rows: [0, 0, 2, 2, 2, 2, 2, 2, 2, 62, 0, 0] }, // L
  77: { w: 9, rows: [0, 0, 198, 198, 198, 170, 170, 170, 154, 146, 0, 0] }, // M
  78: { w: 7, rows: [0, 0, 38, 38, 38, 42, 42, 42, 50, 50, 0, 0] }, // N
  79: { w: 9, rows: [0, 0, 56, 68, 130, 130, 130, 130, 68, 56, 0, 0] }, // O
  80: { w: 7, rows: [0, 0, 30, 34, 34, 34, 30, 2, 2, 2, 0, 0] }, // P
  81: { w: 9, rows: [0, 0, 56, 68, 130, 130, 130, 130, 68, 248, 0, 0] }, // Q
  82: { w: 7, rows: [0, 0, 30, 34, 34, 34, 30, 50, 34, 34, 0, 0] }, // R
  83: { w: 7, rows: [0, 0, 28, 34, 2, 4, 56, 32, 34, 28, 0, 0] }, // S
  84: { w: 6, rows: [0, 0, 62, 8, 8, 8, 8, 8, 8, 8, 0, 0] }, // T
  85: { w: 7, rows: [0, 0, 34, 34, 34, 34, 34, 34, 34, 28, 0, 0] }, // U
  86: { w: 6, rows: [0, 0, 33, 34, 34, 18, 20, 20, 12, 8, 0, 0] }, // V
  87: { w: 10, rows: [0, 0, 305, 306, 306, 298, 170, 202, 204, 196, 0, 0] }, // W
  88: { w: 6, rows: [0, 0, 34, 18, 20, 12, 12, 20, 18, 34, 0, 0] }, // X
  89: { w: 6, rows: [0, 0, 34, 34, 20, 20, 8, 8, 8, 8, 0, 0] }, // Y
  90: { w: 7, rows: [0, 0, 62, 32, 16, 8, 8, 4, 2, 62, 0, 0] }, // Z
  91: { w: 4, rows: [0, 6, 2, 2, 2, 2, 2, 2, 2, 2, 6, 0] }, // [
  92: { w: 3, rows: [0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 0] }, // backslash
  93: { w: 3, rows: [0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0] }, // ]
  94: { w: 6, rows: [0, 0, 0, 0, 12, 10, 10, 18, 0, 0, 0, 0] }, // ^
  95: { w: 5, rows: [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 31, 0] }, // _
  96: { w: 3, rows: [0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0] }, // `
  97: { w: 6, rows: [0, 0, 0, 0, 28, 18, 24, 22, 18, 30, 0, 0] }, // a
  98: { w: 7, rows: [0, 0, 2, 2, 30, 34, 34, 34, 34, 30, 0, 0] }, // b
  99: { w: 6, rows: [0, 0, 0, 0, 28, 34, 2, 2, 34, 28, 0, 0] }, // c
  100: { w: 7, rows: [0, 0, 32, 32, 60, 34, 34, 34, 34, 60, 0, 0] }, // d
  101: { w: 7, rows: [0, 0, 0, 0, 28, 34, 62, 2, 34, 28, 0, 0] }, // e
  102: { w: 3, rows: [0, 4, 2, 2, 7, 2, 2, 2, 2, 2, 0, 0] }, // f
  103: { w: 7, rows: [0, 0, 0, 0, 60, 34, 34, 34, 34, 60, 34, 28] }, // g
  104: { w: 7, rows: [0, 0, 2, 2, 30, 38, 34, 34, 34, 34, 0, 0] }, // h
  105: { w: 3, rows: [0, 0, 2, 0, 2, 2, 2, 2, 2, 2, 0, 0] }, // i
  106: { w: 3, rows: [0, 0, 2, 0, 2, 2, 2, 2, 2, 2, 2, 3] }, // j
  107: { w: 6, rows: [0, 0, 2, 2, 18, 10, 6, 10, 10, 18, 0, 0] }, // k
  108: { w: 3, rows: [0, 0, 2, 2, 2, 2, 2, 2, 2, 6, 0, 0] }, // l
  109: { w: 9, rows: [0, 0, 0, 0, 238, 146, 146, 146, 146, 146, 0, 0] }, // m
  110: { w: 7, rows: [0, 0, 0, 0, 30, 38, 34, 34, 34, 34, 0, 0] }, // n
  111: { w: 7, rows: [0, 0, 0, 0, 28, 34, 34, 34, 34, 28, 0, 0] }, // o
  112: { w: 7, rows: [0, 0, 0, 0, 30, 34, 34, 34, 34, 30, 2, 2] }, // p
  113: { w: 7, rows: [0, 0, 0, 0, 60, 34, 34, 34, 34, 60, 32, 32] }, // q
  114: { w: 4, rows: [0, 0, 0, 0, 14, 2, 2, 2, 2, 2, 0, 0] }, // r
  115: { w: 6, rows: [0, 0, 0, 0, 14, 18, 6, 24, 18, 30, 0, 0] }, // s
  116: { w: 3, rows: [0, 0, 2, 2, 7, 2, 2, 2, 2, 6, 0, 0] }, // t
  117: { w: 7, rows: [0, 0, 0, 0, 34, 34, 34, 34, 50, 60, 0, 0] }, // u
  118: { w: 5, rows: [0, 0, 0, 0, 17, 17, 10, 10, 10, 4, 0, 0] }, // v
  119: { w: 8, rows: [0, 0, 0, 0, 153, 89, 90, 86, 102, 36, 0, 0] }, // w
  120: { w: 5, rows: [0, 0, 0, 0, 4, 5, 2, 3, 5, 4, 0, 0] }, // x
  121: { w: 5, rows: [0, 0, 0, 0, 17, 17, 10, 10, 10, 4, 4, 2] }, // y
  122: { w: 6, rows: [0, 0, 0, 0, 30, 16, 8, 4, 2, 30, 0, 0] }, // z
  123: { w: 3, rows: [0, 6, 2, 2, 2, 2, 2, 2, 2, 2, 6, 0] }, // {
  124: { w: 3, rows: [0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2] }, // |
  125: { w: 3, rows: [0, 3, 2, 2, 2, 2, 2, 2, 2, 2, 3, 0] }, // }
  126: { w: 6, rows: [0, 0, 0, 0, 0, 0, 22, 26, 0, 0, 0, 0] }, // ~
};
