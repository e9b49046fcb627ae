// UI contract tests: the app against the fixture server, with every
// displayed number originating from an API response.

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import {
  BINARY_QUESTION,
  FIXTURE_BINS,
  FixtureServer,
  MAGNITUDE_QUESTION,
  questionPayload,
} from "./fixtureServer.js";

let root: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="app"></div>';
  root = document.getElementById("app")!;
});

function makeApp(server: FixtureServer): App {
  return new App(root, new ApiClient("http://test", server.fetch));
}

function click(selector: string): void {
  const el = root.querySelector(selector);
  if (!(el instanceof HTMLElement)) throw new Error(`no element ${selector}`);
  el.click();
}

async function startBinaryQuestion(server: FixtureServer): Promise<App> {
  server.nextQueue.push(questionPayload(BINARY_QUESTION));
  const app = makeApp(server);
  await app.start();
  click(".deck-button");
  await app.idle();
  expect(root.querySelector(".question-prompt")?.textContent).toBe(BINARY_QUESTION.prompt);
  return app;
}

describe("deck picker", () => {
  it("lists decks from the server and starts a session on choice", async () => {
    const server = new FixtureServer();
    server.nextQueue.push(questionPayload(BINARY_QUESTION));
    const app = makeApp(server);
    await app.start();
    const button = root.querySelector(".deck-button") as HTMLButtonElement;
    expect(button.dataset.deckId).toBe("trivia-choice");
    button.click();
    await app.idle();
    expect(root.querySelector(".question-play")).not.toBeNull();
    expect(server.requests.some((r) => r.method === "POST" && r.url.endsWith("/sessions")))
      .toBe(true);
  });

  it("shows a retry banner when the server is unreachable", async () => {
    const server = new FixtureServer();
    server.failAll = true;
    const app = makeApp(server);
    await app.start();
    expect(root.querySelector(".banner-error")).not.toBeNull();
    server.failAll = false;
    click(".retry-button");
    await app.idle();
    expect(root.querySelector(".deck-button")).not.toBeNull();
  });
});

describe("question play", () => {
  it("renders the confidence selector constrained to [p_rand, 0.99]", async () => {
    const server = new FixtureServer();
    const app = await startBinaryQuestion(server);
    const slider = root.querySelector(".confidence-slider") as HTMLInputElement;
    expect(slider.min).toBe("50");
    expect(slider.max).toBe("99");
    slider.value = "150";
    click(".submit-button");
    await app.idle();
    const answerRequest = server.requests.find((r) => r.url.endsWith("/answers"));
    expect(answerRequest).toBeUndefined(); // no answer picked yet: validation stops it
    expect(root.querySelector(".validation-error")?.textContent).not.toBe("");
  });

  it("never submits a confidence outside the allowed band", async () => {
    const server = new FixtureServer();
    const app = await startBinaryQuestion(server);
    (root.querySelector('input[type="radio"]') as HTMLInputElement).checked = true;
    const slider = root.querySelector(".confidence-slider") as HTMLInputElement;
    slider.value = "400";
    click(".submit-button");
    await app.idle();
    const body = server.requests.find((r) => r.url.endsWith("/answers"))?.body as {
      prediction: { confidence: number };
    };
    expect(body.prediction.confidence).toBeLessThanOrEqual(0.99);
    expect(body.prediction.confidence).toBeGreaterThanOrEqual(0.5);
  });

  it("renders +10 with positive styling for the pinned correct fixture", async () => {
    const server = new FixtureServer();
    const app = await startBinaryQuestion(server);
    const radios = root.querySelectorAll('input[type="radio"]');
    (radios[0] as HTMLInputElement).checked = true; // "True" = the correct fixture
    (root.querySelector(".confidence-slider") as HTMLInputElement).value = "99";
    click(".submit-button");
    await app.idle();
    const display = root.querySelector(".points-display")!;
    expect(display.textContent).toBe("+10");
    expect(display.classList.contains("score-positive")).toBe(true);
    expect(display.classList.contains("score-negative")).toBe(false);
    expect(display.getAttribute("title")).toContain("10");
  });

  it("renders −57 with negative styling for the pinned incorrect fixture", async () => {
    const server = new FixtureServer();
    const app = await startBinaryQuestion(server);
    const radios = root.querySelectorAll('input[type="radio"]');
    (radios[1] as HTMLInputElement).checked = true; // "False" = the incorrect fixture
    (root.querySelector(".confidence-slider") as HTMLInputElement).value = "99";
    click(".submit-button");
    await app.idle();
    const display = root.querySelector(".points-display")!;
    expect(display.textContent).toBe("−57");
    expect(display.classList.contains("score-negative")).toBe(true);
    // full precision availble on hover, straight from the API
    expect(display.getAttribute("title")).toContain("-57.26893683880667");
  });

  it("shows only server numbers: no score appears before the response", async () => {
    const server = new FixtureServer();
    const app = await startBinaryQuestion(server);
    expect(root.querySelector(".points-display")).toBeNull();
    (root.querySelector('input[type="radio"]') as HTMLInputElement).checked = true;
    click(".submit-button");
    await app.idle();
    expect(root.querySelector(".points-display")).not.toBeNull();
  });

  it("validates interval inputs before anything reaches the server", async () => {
    const server = new FixtureServer();
    server.nextQueue.push(questionPayload(MAGNITUDE_QUESTION));
    const app = makeApp(server);
    await app.start();
    click(".deck-button");
    await app.idle();

    const lower = root.querySelector(".interval-lower") as HTMLInputElement;
    const upper = root.querySelector(".interval-upper") as HTMLInputElement;
    lower.value = "100";
    upper.value = "10";
    click(".submit-button");
    await app.idle();
    expect(root.querySelector(".validation-error")?.textContent).toMatch(/not exceed/);

    lower.value = "-5";
    upper.value = "10";
    click(".submit-button");
    await app.idle();
    expect(root.querySelector(".validation-error")?.textContent).toMatch(/positive/);
    expect(server.requests.some((r) => r.url.endsWith("/answers"))).toBe(false);

    lower.value = "1000";
    upper.value = "100000";
    click(".submit-button");
    await app.idle();
    expect(root.querySelector(".points-display")?.textContent).toBe("+4");
    expect(root.querySelector(".feedback-detail")?.textContent).toContain("12345");
  });

  it("advances to the next question after feedback", async () => {
    const server = new FixtureServer();
    server.nextQueue.push(
      questionPayload(BINARY_QUESTION, 0, 2),
      questionPayload({ ...BINARY_QUESTION, id: "tf-1", prompt: "Second prompt." }, 1, 2),
    );
    const app = makeApp(server);
    await app.start();
    click(".deck-button");
    await app.idle();
    (root.querySelector('input[type="radio"]') as HTMLInputElement).checked = true;
    click(".submit-button");
    await app.idle();
    click(".continue-button");
    await app.idle();
    expect(root.querySelector(".question-prompt")?.textContent).toBe("Second prompt.");
  });
});

describe("calibration view", () => {
  it("plots exactly the bins returned by the API", async () => {
    const server = new FixtureServer();
    const app = await startBinaryQuestion(server);
    (root.querySelector('input[type="radio"]') as HTMLInputElement).checked = true;
    click(".submit-button");
    await app.idle();
    click(".calibration-button");
    await app.idle();

    const points = [...root.querySelectorAll("circle.calibration-point")];
    const populated = FIXTURE_BINS.filter((bin) => bin.count > 0);
    expect(points).toHaveLength(populated.length);
    points.forEach((point, i) => {
      const circle = point as SVGCircleElement;
      expect(Number(circle.dataset.confidence)).toBe(populated[i]!.mean_confidence);
      expect(Number(circle.dataset.frequency)).toBe(populated[i]!.frequency_correct);
    });
    expect(root.querySelector(".stats-summary")?.textContent).toContain("11 predictions");
  });

  it("shows a placeholder when no bins are populated", async () => {
    const server = new FixtureServer();
    server.bins = FIXTURE_BINS.map((bin) => ({
      ...bin, count: 0, frequency_correct: null, mean_confidence: null,
    }));
    const app = await startBinaryQuestion(server);
    (root.querySelector('input[type="radio"]') as HTMLInputElement).checked = true;
    click(".submit-button");
    await app.idle();
    click(".calibration-button");
    await app.idle();
    expect(root.querySelector(".empty-placeholder")).not.toBeNull();
    expect(root.querySelector("circle.calibration-point")).toBeNull();
  });

  it("appears automatically when the deck is exhausted", async () => {
    const server = new FixtureServer();
    const app = await startBinaryQuestion(server);
    (root.querySelector('input[type="radio"]') as HTMLInputElement).checked = true;
    click(".submit-button");
    await app.idle();
    click(".continue-button"); // queue is empty: server reports done
    await app.idle();
    expect(root.querySelector(".calibration-view")).not.toBeNull();
  });
});
