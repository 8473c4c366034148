export { ApiClient, ApiError } from './api';
export type { FetchLike } from './api';
export { RetrievalController, debounce } from './app';
export type { ControllerOptions } from './app';
export {
  escapeHtml,
  highlightTerms,
  renderExperimentPicker,
  renderRetrievalView,
  renderWorkbench,
} from './render';
export { DEFAULT_STATE, decodeState, encodeState } from './state';
export type { ViewState } from './state';
export type * from './types';
