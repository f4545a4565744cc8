// Repo stylesheet. All figure styling lives here so the renderers stay
// purely structural.

export type Rgb = [number, number, number];

export const STYLE = {
  background: [255, 255, 255] as Rgb,
  frame: [60, 60, 60] as Rgb,
  grid: [225, 225, 225] as Rgb,
  text: [30, 30, 30] as Rgb,
  // Series palette, cycled in input order.
  series: [
    [31, 119, 180],
    [214, 39, 40],
    [44, 160, 44],
    [148, 103, 189],
    [255, 127, 14],
  ] as Rgb[],
  bandFill: [174, 199, 232] as Rgb,
  bandMean: [31, 119, 180] as Rgb,
  stem: [31, 119, 180] as Rgb,
  marker: [214, 39, 40] as Rgb,

  plotWidth: 640,
  plotHeight: 400,
  marginLeft: 56,
  marginRight: 16,
  marginTop: 28,
  marginBottom: 40,
  tickLength: 4,
  tickCount: 5,

  imageScale: 4,
  imageColumns: 2,
  imagePad: 12,
  captionHeight: 16,
};
