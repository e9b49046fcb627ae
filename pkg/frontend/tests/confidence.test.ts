import { describe, expect, it } from "vitest";

import { ConfidenceControl } from "../src/confidence.js";

function slider(control: ConfidenceControl): HTMLInputElement {
  return control.element.querySelector(".confidence-slider") as HTMLInputElement;
}

describe("ConfidenceControl", () => {
  it("constrains the slider to [chance, cap] in whole percentage points", () => {
    const control = new ConfidenceControl(0.5, 0.99);
    const input = slider(control);
    expect(input.min).toBe("50");
    expect(input.max).toBe("99");
    expect(input.step).toBe("1");
  });

  it("starts at the chance level (zero-point confidence)", () => {
    const control = new ConfidenceControl(0.25, 0.99);
    expect(control.value()).toBe(0.25);
  });

  it("cannot emit values outside the band even if the DOM is forced", () => {
    const control = new ConfidenceControl(0.5, 0.99);
    const input = slider(control);
    input.value = "200";
    expect(control.value()).toBeLessThanOrEqual(0.99);
    input.value = "1";
    expect(control.value()).toBeGreaterThanOrEqual(0.5);
    input.value = "not-a-number";
    expect(control.value()).toBeGreaterThanOrEqual(0.5);
    expect(control.value()).toBeLessThanOrEqual(0.99);
  });

  it("rounds chance levels that are not whole percents up into the band", () => {
    const control = new ConfidenceControl(1 / 3, 0.99);
    expect(slider(control).min).toBe("34");
    expect(control.value()).toBeGreaterThanOrEqual(1 / 3);
  });

  it("tracks the slider and reports probabilities", () => {
    const control = new ConfidenceControl(0.5, 0.99);
    control.set(0.83);
    expect(control.value()).toBeCloseTo(0.83, 12);
    expect(control.element.querySelector(".confidence-label")?.textContent).toBe("83%");
  });

  it("rejects an empty band", () => {
    expect(() => new ConfidenceControl(0.985, 0.99)).not.toThrow();
    expect(() => new ConfidenceControl(0.999, 0.99)).toThrow(/empty/);
  });
});
